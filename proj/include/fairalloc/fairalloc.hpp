#pragma once

#include "fairalloc/arith.hpp"
#include "fairalloc/certificate.hpp"
#include "fairalloc/edge.hpp"
#include "fairalloc/engine.hpp"
#include "fairalloc/errors.hpp"
#include "fairalloc/generate.hpp"
#include "fairalloc/instance.hpp"
#include "fairalloc/instance_io.hpp"
#include "fairalloc/oracle.hpp"
#include "fairalloc/report.hpp"
#include "fairalloc/solver.hpp"
#include "fairalloc/trace.hpp"
#include "fairalloc/tree.hpp"

// Command-line front end: solve / decide / oracle / gen / verify-alloc /
// verify-cert / trace. Standard output carries JSON only; diagnostics go to
// standard error. Exit codes: 0 ok (or verified), 1 malformed input or a
// failed verification, 2 enumeration guard exceeded, 3 internal invariant
// breach.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fairalloc/fairalloc.hpp"

namespace {

using namespace fairalloc;

constexpr int kExitOk = 0;
constexpr int kExitMalformed = 1;
constexpr int kExitGuard = 2;
constexpr int kExitInternal = 3;

std::pair<std::int64_t, std::int64_t> parse_density(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return {std::stoll(text), 1};
        return {std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1))};
    } catch (const std::exception&) {
        throw Malformed("density", "cannot parse '" + text + "' as p/q");
    }
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw Malformed("file", "cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

int run_solve(const std::string& instance_path, const std::string& epsilon,
              const std::string& report_path, bool sweep, int jobs) {
    Instance inst = load_instance(instance_path);
    Approximation approx = Approximation::parse(epsilon);
    SolveOptions options;
    options.sweep = sweep;
    options.jobs = jobs;
    auto start = std::chrono::steady_clock::now();
    SolveResult result = solve(inst, approx, options);
    double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    std::cout << allocation_to_json(inst, result.allocation, result.T_star, approx).dump() << "\n";
    if (!report_path.empty())
        write_json_file(report_path, report_to_json(make_report(inst, approx, result, wall_ms)));
    return kExitOk;
}

int run_decide(const std::string& instance_path, std::int64_t T, const std::string& epsilon,
               const std::string& cert_path) {
    Instance inst = load_instance(instance_path);
    Approximation approx = Approximation::parse(epsilon);
    DecisionOutcome outcome = decide(inst, T, approx);
    if (auto* success = std::get_if<DecideSuccess>(&outcome)) {
        nlohmann::json j = allocation_to_json(inst, success->allocation, T, approx);
        j["outcome"] = "success";
        j["iterations"] = success->stats.iterations;
        std::cout << j.dump() << "\n";
    } else {
        auto& fail = std::get<DecideFail>(outcome);
        nlohmann::json j{{"outcome", "fail"},
                         {"T", T},
                         {"epsilon", approx.str()},
                         {"root", inst.player_names()[fail.summary.root]},
                         {"signature", fail.summary.signature},
                         {"observed_height", fail.summary.observed_height},
                         {"height_limit", fail.summary.limit},
                         {"iterations", fail.stats.iterations}};
        std::cout << j.dump() << "\n";
        if (!cert_path.empty())
            write_json_file(cert_path, certificate_to_json(inst, fail.certificate));
    }
    return kExitOk;
}

int run_oracle(const std::string& instance_path, int max_r, int max_p) {
    Instance inst = load_instance(instance_path);
    std::cout << nlohmann::json{{"opt", exact_opt(inst, max_r, max_p)}}.dump() << "\n";
    return kExitOk;
}

int run_gen(std::uint64_t seed, int players, int resources, std::int64_t max_value,
            const std::string& density) {
    auto [num, den] = parse_density(density);
    Instance inst = generate_instance(seed, players, resources, max_value, num, den);
    std::cout << instance_to_json(inst).dump(2) << "\n";
    return kExitOk;
}

int run_verify_alloc(const std::string& instance_path, const std::string& alloc_path,
                     std::int64_t T, const std::string& epsilon) {
    Instance inst = load_instance(instance_path);
    Approximation approx = Approximation::parse(epsilon);
    Allocation alloc = allocation_from_json(inst, load_json_file(alloc_path));
    bool ok = verify_allocation(inst, alloc, T, approx);
    std::cout << nlohmann::json{{"verified", ok}}.dump() << "\n";
    return ok ? kExitOk : 1;
}

int run_verify_cert(const std::string& instance_path, const std::string& cert_path, int max_r) {
    Instance inst = load_instance(instance_path);
    DualCertificate cert = certificate_from_json(inst, load_json_file(cert_path));
    bool ok = verify_dual_certificate(inst, cert, max_r);
    std::cout << nlohmann::json{{"verified", ok}}.dump() << "\n";
    return ok ? kExitOk : 1;
}

int run_trace(const std::string& instance_path, std::int64_t T, const std::string& epsilon) {
    Instance inst = load_instance(instance_path);
    Approximation approx = Approximation::parse(epsilon);
    JsonlTraceSink sink(std::cout, inst);
    EngineOptions options;
    options.trace = &sink;
    decide(inst, T, approx, options);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Restricted max-min fair allocation solver"};
    app.require_subcommand(1);

    std::string instance_path, epsilon = "1/1", report_path, cert_path, alloc_path, density = "1/2";
    std::int64_t T = 0, max_value = 10;
    std::uint64_t seed = 0;
    int players = 1, resources = 0, max_r = kOracleMaxResources, max_p = kOracleMaxPlayers;
    int cert_max_r = 20, jobs = 1;
    bool sweep = false;

    auto* solve_cmd = app.add_subcommand("solve", "Binary-search the best T and print the allocation");
    solve_cmd->add_option("instance", instance_path)->required();
    solve_cmd->add_option("--epsilon", epsilon, "approximation parameter p/q in (0,1]");
    solve_cmd->add_option("--report", report_path, "write a run report to this path");
    solve_cmd->add_flag("--sweep", sweep, "probe all candidate T concurrently");
    solve_cmd->add_option("--jobs", jobs, "threads for --sweep");

    auto* decide_cmd = app.add_subcommand("decide", "Decide a single target T");
    decide_cmd->add_option("instance", instance_path)->required();
    decide_cmd->add_option("--T", T)->required();
    decide_cmd->add_option("--epsilon", epsilon);
    decide_cmd->add_option("--cert", cert_path, "write the dual certificate here on failure");

    auto* oracle_cmd = app.add_subcommand("oracle", "Exact optimum by exhaustive search");
    oracle_cmd->add_option("instance", instance_path)->required();
    oracle_cmd->add_option("--max-r", max_r, "resource-count guard");
    oracle_cmd->add_option("--max-p", max_p, "player-count guard");

    auto* gen_cmd = app.add_subcommand("gen", "Generate a deterministic random instance");
    gen_cmd->add_option("--seed", seed)->required();
    gen_cmd->add_option("--players", players)->required();
    gen_cmd->add_option("--resources", resources)->required();
    gen_cmd->add_option("--max-value", max_value);
    gen_cmd->add_option("--density", density, "eligibility probability p/q");

    auto* va_cmd = app.add_subcommand("verify-alloc", "Check an allocation against T/alpha");
    va_cmd->add_option("instance", instance_path)->required();
    va_cmd->add_option("allocation", alloc_path)->required();
    va_cmd->add_option("--T", T)->required();
    va_cmd->add_option("--epsilon", epsilon);

    auto* vc_cmd = app.add_subcommand("verify-cert", "Check a dual infeasibility certificate");
    vc_cmd->add_option("instance", instance_path)->required();
    vc_cmd->add_option("certificate", cert_path)->required();
    vc_cmd->add_option("--max-r", cert_max_r, "resource-count guard");

    auto* trace_cmd = app.add_subcommand("trace", "Stream engine events for one decide as JSONL");
    trace_cmd->add_option("instance", instance_path)->required();
    trace_cmd->add_option("--T", T)->required();
    trace_cmd->add_option("--epsilon", epsilon);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitMalformed;
    }

    try {
        if (solve_cmd->parsed()) return run_solve(instance_path, epsilon, report_path, sweep, jobs);
        if (decide_cmd->parsed()) return run_decide(instance_path, T, epsilon, cert_path);
        if (oracle_cmd->parsed()) return run_oracle(instance_path, max_r, max_p);
        if (gen_cmd->parsed()) return run_gen(seed, players, resources, max_value, density);
        if (va_cmd->parsed()) return run_verify_alloc(instance_path, alloc_path, T, epsilon);
        if (vc_cmd->parsed()) return run_verify_cert(instance_path, cert_path, cert_max_r);
        if (trace_cmd->parsed()) return run_trace(instance_path, T, epsilon);
    } catch (const Malformed& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMalformed;
    } catch (const TooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitGuard;
    } catch (const InvariantBreach& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const Overflow& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMalformed;
    }
    return kExitMalformed;
}

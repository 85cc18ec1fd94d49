#pragma once

#include <stdexcept>
#include <string>

namespace fairalloc {

// Input violated the instance/file contract. `field` names the offending part.
class Malformed : public std::runtime_error {
public:
    Malformed(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// An internal engine invariant failed. Always a bug, never a user error.
class InvariantBreach : public std::logic_error {
public:
    explicit InvariantBreach(const std::string& message) : std::logic_error(message) {}
};

// A checked wide-integer operation would wrap.
class Overflow : public std::runtime_error {
public:
    explicit Overflow(const std::string& message) : std::runtime_error(message) {}
};

// An enumeration guard was exceeded (oracle / certificate verification).
class TooLarge : public std::runtime_error {
public:
    explicit TooLarge(const std::string& message) : std::runtime_error(message) {}
};

} // namespace fairalloc

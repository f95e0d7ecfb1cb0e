#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tcore {

/// A congruence family was instantiated outside its hypotheses
/// (wrong residue class, j divisible by p, non-integral progression, ...).
class hypothesis_error : public std::runtime_error {
public:
    explicit hypothesis_error(const std::string& what) : std::runtime_error(what) {}
};

/// A sweep would require more series coefficients than the configured budget.
class budget_error : public std::runtime_error {
public:
    budget_error(const std::string& what, std::int64_t required)
        : std::runtime_error(what), required_length(required) {}

    std::int64_t required_length;
};

} // namespace tcore

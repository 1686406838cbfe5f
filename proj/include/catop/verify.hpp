#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace catop {

struct PropertyResult {
    std::string name;
    bool pass = false;
    std::string detail;  // measured worst value against its tolerance
};

/// Randomized identity suites behind `verify`; each is a deterministic
/// function of the seed. Suite names: scalar, sequence, operator, solver.
std::vector<PropertyResult> verify_scalar(std::uint64_t seed);
std::vector<PropertyResult> verify_sequence(std::uint64_t seed);
std::vector<PropertyResult> verify_operator(std::uint64_t seed);
std::vector<PropertyResult> verify_solver(std::uint64_t seed);

/// "all" concatenates the four suites.
std::vector<PropertyResult> verify_suite(const std::string& name, std::uint64_t seed);

}  // namespace catop

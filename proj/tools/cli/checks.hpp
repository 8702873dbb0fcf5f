#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "bzwave/analysis.hpp"

namespace bzwave::cli {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Relation checks followed by the tail fits that apply to the regime:
/// r < 1: -inf slope of phi vs lambda (5%); r = 1: K in phi ~ K/t^2 vs 2c^2/b
/// (10%); all: +inf slope of 1 - psi vs zeta_1 (5%). `report` receives the
/// structured results for the JSON sidecar.
std::vector<Check> front_checks(const Front& front, const BzParams& params, nlohmann::json* report);

}  // namespace bzwave::cli

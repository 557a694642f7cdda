#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace maxop::check {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

CheckResult identity_suite();
CheckResult brute_force_oracles();
CheckResult multiplier_exactness();
CheckResult decay_boundedness();
CheckResult kernel_cross_oracle();
CheckResult square_function_equality();
CheckResult rotation_identities();
CheckResult decay_necessity();
CheckResult grushin_suite();
CheckResult dimension_stability();

struct NamedCheck {
    int id;
    std::string name;
    std::function<CheckResult()> run;
};

// The acceptance criteria in order.
std::vector<NamedCheck> acceptance_checks();

// Runs the selected ids (all when empty), printing one line per check.
// Returns the number of failures.
int run_checks(const std::vector<int>& ids, std::ostream& out);

} // namespace maxop::check

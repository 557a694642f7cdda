#include "checks.hpp"

#include <iostream>

int main()
{
    const int failures = maxop::check::run_checks({}, std::cout);
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
    return failures == 0 ? 0 : 1;
}

// Acceptance runner: one pass/fail line per criterion, nonzero exit if any fails.

#include <iostream>

#include "dephaser/acceptance.hpp"

int main() {
    int failed = 0;
    for (const auto& r : dephaser::acceptance::run_all()) {
        std::cout << dephaser::acceptance::report_line(r) << std::endl;
        if (!r.passed) ++failed;
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criterion(s) failed")
              << std::endl;
    return failed == 0 ? 0 : 1;
}

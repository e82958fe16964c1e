#include "dimflow/suites.hpp"

#include <iostream>

// One line per acceptance criterion; nonzero exit when any criterion fails.
int main(int argc, char** argv) {
    unsigned long long seed = argc > 1 ? std::stoull(argv[1]) : 1;
    int failed = 0;
    for (const auto& s : dimflow::suite_catalog()) {
        auto r = dimflow::run_suite(s.name, seed);
        std::cout << r.line() << std::endl;
        failed += !r.pass;
    }
    std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << std::endl;
    return failed ? 1 : 0;
}

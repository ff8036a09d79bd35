#include "kmeis/acceptance.hpp"

#include <cstring>
#include <iostream>

int main(int argc, char** argv)
{
    bool verbose = false;
    int only = 0;
    for (int k = 1; k < argc; ++k) {
        if (!std::strcmp(argv[k], "-v") || !std::strcmp(argv[k], "--verbose"))
            verbose = true;
        else
            only = std::atoi(argv[k]);
    }
    auto suite = kmeis::acceptance_suite();
    int failed = 0;
    for (size_t k = 0; k < suite.size(); ++k) {
        if (only && static_cast<int>(k) + 1 != only)
            continue;
        auto r = suite[k]();
        kmeis::print_result(std::cout, r, verbose);
        std::cout.flush();
        failed += !r.passed;
    }
    std::cout << (failed ? "FAILED: " + std::to_string(failed) + " criteria" : std::string("all criteria passed"))
              << '\n';
    return failed ? 1 : 0;
}

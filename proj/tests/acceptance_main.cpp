#include <iostream>

#include "treesub/acceptance.hpp"

// One line per criterion. Exit status is the number of failed criteria.
int main(int argc, char** argv) {
    treesub::ExperimentConfig cfg;
    if (argc > 1) cfg = treesub::ExperimentConfig::load(argv[1]);
    auto results = treesub::run_acceptance(cfg, false, &std::cout);
    int failed = 0;
    for (const auto& r : results) failed += !r.pass();
    std::cout << results.size() - failed << "/" << results.size() << " criteria passed\n";
    return failed;
}

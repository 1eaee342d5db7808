#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "treesub/harness.hpp"

namespace treesub {

struct CriterionInfo {
    int number;
    std::string name;
    std::string summary;
};

const std::vector<CriterionInfo>& acceptance_criteria();

// name or number; throws std::invalid_argument for an unknown name.
// Parameters are read from `<name>.<key>` entries of the config. With
// explore = true every pinned seed is replaced by a fresh one.
CriterionResult run_criterion(const std::string& which, const ExperimentConfig& cfg,
                              bool explore = false);

// runs every criterion in order, printing each as it finishes when os != nullptr
std::vector<CriterionResult> run_acceptance(const ExperimentConfig& cfg, bool explore,
                                            std::ostream* os);

}  // namespace treesub

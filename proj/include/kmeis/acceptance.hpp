#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace kmeis {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    double seconds = 0;
    double limit_seconds = 0;  // 0 means no limit
    std::vector<std::string> details;
};

// The acceptance suite.  Each check runs at the tolerance it is stated
// with; a run that exceeds its time limit fails.
CriterionResult criterion_eigenvalue();
CriterionResult criterion_label_transitions();
CriterionResult criterion_inversion_sets();
CriterionResult criterion_constant_term();
CriterionResult criterion_functional_equation();
CriterionResult criterion_convergence();
CriterionResult criterion_oracle_equivalence();
CriterionResult criterion_cramer_solver(unsigned long seed = 20240611);
CriterionResult criterion_uniqueness();

std::vector<std::function<CriterionResult()>> acceptance_suite();

// One line per criterion, details indented below it.
// Timings are optional so that a report can be reproduced byte for byte.
void print_result(std::ostream& os, const CriterionResult& r, bool verbose, bool timings = true);

}  // namespace kmeis

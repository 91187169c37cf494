#pragma once

#include "chernshift/green_tensor.hpp"
#include "chernshift/kubo_conductivity.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace chernshift::cli {

struct AcceptanceSettings {
    QuadratureConfig quad;
    OscQuadConfig osc;
    unsigned threads = 0;
};

struct CriterionOutcome {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

std::vector<int> criterion_ids();
bool has_criterion(int id);

CriterionOutcome run_criterion(int id, const AcceptanceSettings &set);

// One line per criterion, then a summary line. True iff all pass.
bool run_acceptance(const std::vector<int> &ids, const AcceptanceSettings &set,
                    std::ostream &os);

} // namespace chernshift::cli

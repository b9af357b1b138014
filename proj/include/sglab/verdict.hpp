#pragma once

#include <cmath>
#include <string>

namespace sglab {

// Measured constant for a paper inequality over a grid. The paper's constants
// are existential, so probes never encode an a-priori pass/fail threshold;
// callers pin thresholds per scenario.
struct InequalityVerdict {
    std::string probe;
    std::string grid;
    double constant = 0.0; // sup of LHS/RHS over the grid
    bool finite = false;   // every grid evaluation was a normal float (or zero)
    double trend = 0.0;    // ratio of sup over the last two dyadic windows
};

inline bool is_normal_or_zero(double v) { return v == 0.0 || std::isnormal(v); }

} // namespace sglab

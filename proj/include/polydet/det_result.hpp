#pragma once

#include <optional>

namespace polydet {

struct DetResult {
    double log_det_over_area = 0;
    double D = 0;
    double sum_log_d2 = 0;
    double scaling_term = 0;
    // log c0; empty when c0 is symbolic (genus >= 2)
    std::optional<double> log_c0;
    std::optional<double> area;

    bool c0_known() const { return log_c0.has_value(); }
    // log det = log(det/A) + log A, when the area was computed
    std::optional<double> log_det() const;
};

} // namespace polydet

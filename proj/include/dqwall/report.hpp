#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "dqwall/phase_function.hpp"

namespace dqwall {

/// Outcome of one residual check. pass holds iff max_abs <= tolerance.
struct ResidualReport {
    std::string label;
    double max_abs = 0.0;
    double l2 = 0.0;
    double tolerance = 0.0;
    bool pass = true;
    PhaseGrid grid;
    /// Node of the largest residual (x, p), when it is a grid quantity.
    double worst_x = 0.0, worst_p = 0.0;
};

/// Half-open range of x nodes a residual is evaluated on.
struct NodeRange {
    std::size_t begin = 0, end = 0;
};

/// Drops `margin` nodes at each window edge.
NodeRange interior_x(const PhaseGrid& g, std::size_t margin);

ResidualReport make_report(std::string label, const PhaseFunction& residual, NodeRange rows,
                           double tolerance);
/// Same, skipping the rows in `excluded`.
ResidualReport make_report(std::string label, const PhaseFunction& residual, NodeRange rows,
                           NodeRange excluded, double tolerance);

/// Report for a scalar discrepancy (no grid extent; l2 = max_abs).
ResidualReport scalar_report(std::string label, double discrepancy, double tolerance,
                             const PhaseGrid& grid);

nlohmann::ordered_json to_json(const PhaseGrid& g);
nlohmann::ordered_json to_json(const ResidualReport& r);

}  // namespace dqwall

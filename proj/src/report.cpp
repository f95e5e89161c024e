#include "dqwall/report.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dqwall {

NodeRange interior_x(const PhaseGrid& g, std::size_t margin) {
    if (2 * margin >= g.n_x()) throw std::invalid_argument("interior_x: margin too large");
    return {margin, g.n_x() - margin};
}

ResidualReport make_report(std::string label, const PhaseFunction& residual, NodeRange rows,
                           double tolerance) {
    return make_report(std::move(label), residual, rows, NodeRange{}, tolerance);
}

ResidualReport make_report(std::string label, const PhaseFunction& residual, NodeRange rows,
                           NodeRange excluded, double tolerance) {
    const PhaseGrid& g = residual.grid();
    if (rows.end > g.n_x() || rows.begin > rows.end)
        throw std::invalid_argument("make_report: bad node range");
    ResidualReport r{std::move(label), 0.0, 0.0, tolerance, true, g};
    double sum2 = 0.0;
    for (std::size_t i = rows.begin; i < rows.end; ++i) {
        if (i >= excluded.begin && i < excluded.end) continue;
        for (std::size_t j = 0; j < g.n_p(); ++j) {
            double a = std::abs(residual(i, j));
            sum2 += a * a;
            if (a > r.max_abs) {
                r.max_abs = a;
                r.worst_x = g.x(i);
                r.worst_p = g.p(j);
            }
        }
    }
    r.l2 = std::sqrt(sum2 * g.dx() * g.dp());
    r.pass = r.max_abs <= tolerance;
    return r;
}

ResidualReport scalar_report(std::string label, double discrepancy, double tolerance,
                             const PhaseGrid& grid) {
    ResidualReport r{std::move(label), std::abs(discrepancy), std::abs(discrepancy), tolerance,
                     true, grid};
    r.pass = r.max_abs <= tolerance;
    return r;
}

nlohmann::ordered_json to_json(const PhaseGrid& g) {
    nlohmann::ordered_json j;
    j["x_min"] = g.x_min();
    j["x_max"] = g.x_max();
    j["p_min"] = g.p_min();
    j["p_max"] = g.p_max();
    j["n_x"] = g.n_x();
    j["n_p"] = g.n_p();
    j["dx"] = g.dx();
    j["dp"] = g.dp();
    return j;
}

nlohmann::ordered_json to_json(const ResidualReport& r) {
    nlohmann::ordered_json j;
    j["label"] = r.label;
    j["max_abs"] = r.max_abs;
    j["l2"] = r.l2;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    j["grid"] = to_json(r.grid);
    return j;
}

}  // namespace dqwall

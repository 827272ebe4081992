#include "lmg/trace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lmg {

int PopulationTrace::index_of(double s) const {
    if (grid.empty()) throw std::invalid_argument("index_of: empty trace");
    const int last = points() - 1;
    const int k = static_cast<int>(std::lround((s - grid.front()) / (grid.back() - grid.front()) * last));
    return std::clamp(k, 0, last);
}

int PopulationTrace::argmax_level(int k) const {
    int best = 0;
    populations.row(k).maxCoeff(&best);
    return best;
}

double total_variation(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
    if (p.size() != q.size()) throw std::invalid_argument("total_variation: size mismatch");
    return 0.5 * (p - q).cwiseAbs().sum();
}

CompareReport compare_traces(const PopulationTrace& a, const PopulationTrace& b) {
    if (a.points() != b.points() || a.levels() != b.levels()) {
        throw std::invalid_argument("compare_traces: traces must share grid and level count");
    }
    for (int k = 0; k < a.points(); ++k) {
        if (std::abs(a.grid[k] - b.grid[k]) > 1e-12) {
            throw std::invalid_argument("compare_traces: grids differ at index " + std::to_string(k));
        }
    }
    CompareReport report;
    report.grid = a.grid;
    report.tvd.resize(a.points());
    report.argmax_a.resize(a.points());
    report.argmax_b.resize(a.points());
    for (int k = 0; k < a.points(); ++k) {
        report.tvd[k] = total_variation(a.populations.row(k), b.populations.row(k));
        report.argmax_a[k] = a.argmax_level(k);
        report.argmax_b[k] = b.argmax_level(k);
        report.max_argmax_divergence =
            std::max(report.max_argmax_divergence, std::abs(report.argmax_a[k] - report.argmax_b[k]));
    }
    report.final_tvd = report.tvd.back();
    return report;
}

} // namespace lmg

#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace lmg {

// Level populations P_i(s) over an s-grid, one row per grid point.
// model_tag: Full | Rate | ChainConst | ChainFit | ChainExact
struct PopulationTrace {
    std::vector<double> grid;
    Eigen::MatrixXd populations;
    std::string model_tag;

    int points() const { return static_cast<int>(grid.size()); }
    int levels() const { return static_cast<int>(populations.cols()); }
    int index_of(double s) const;
    int argmax_level(int k) const;
};

// Half L1 distance between two probability vectors.
double total_variation(const Eigen::VectorXd& p, const Eigen::VectorXd& q);

struct CompareReport {
    std::vector<double> grid;
    std::vector<double> tvd;        // per grid point
    double final_tvd = 0.0;
    std::vector<int> argmax_a;
    std::vector<int> argmax_b;
    int max_argmax_divergence = 0;  // max |argmax_a - argmax_b| over the grid
};

// Throws std::invalid_argument on grid or level-count mismatch.
CompareReport compare_traces(const PopulationTrace& a, const PopulationTrace& b);

} // namespace lmg

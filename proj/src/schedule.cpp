#include "lmg/schedule.hpp"

#include <stdexcept>
#include <string>

namespace lmg {

std::string to_string(Direction d) {
    return d == Direction::Forward ? "forward" : "backward";
}

Direction direction_from_string(const std::string& name) {
    if (name == "forward") return Direction::Forward;
    if (name == "backward") return Direction::Backward;
    throw std::invalid_argument("direction must be 'forward' or 'backward', got '" + name + "'");
}

Schedule make_schedule(Direction direction, double total_time, int steps) {
    if (total_time <= 0.0) {
        throw std::invalid_argument("total_time must be positive");
    }
    if (steps < 1) {
        throw std::invalid_argument("steps must be >= 1");
    }
    Schedule sched;
    sched.direction = direction;
    sched.total_time = total_time;
    sched.steps = steps;
    sched.grid.resize(steps + 1);
    for (int k = 0; k <= steps; ++k) {
        sched.grid[k] = static_cast<double>(k) / steps;
    }
    sched.grid.front() = 0.0;
    sched.grid.back() = 1.0;
    return sched;
}

Eigen::MatrixXd hamiltonian(const SpinSystem& sys, const Schedule& sched, double s) {
    if (s < 0.0 || s > 1.0) {
        throw std::invalid_argument("s must lie in [0,1], got " + std::to_string(s));
    }
    const double u = (sched.direction == Direction::Forward) ? s : 1.0 - s;
    Eigen::MatrixXd h = -(u / sys.n_spins) * sys.sx2;
    h.diagonal() -= (1.0 - u) * sys.sz_diag;
    return h;
}

Eigen::MatrixXd d_hamiltonian_ds(const SpinSystem& sys, const Schedule& sched) {
    const double sign = (sched.direction == Direction::Forward) ? 1.0 : -1.0;
    Eigen::MatrixXd dh = -(sign / sys.n_spins) * sys.sx2;
    dh.diagonal() += sign * sys.sz_diag;
    return dh;
}

} // namespace lmg

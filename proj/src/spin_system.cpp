#include "lmg/spin_system.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lmg {

SpinSystem build_spin_system(int n_spins) {
    if (n_spins < 2 || n_spins % 2 != 0) {
        throw std::invalid_argument("n_spins must be even and >= 2, got " + std::to_string(n_spins));
    }
    SpinSystem sys;
    sys.n_spins = n_spins;
    sys.spin = n_spins / 2.0;
    sys.dim = n_spins + 1;

    const double s = sys.spin;
    const double ss1 = s * (s + 1.0);

    sys.sz_diag.resize(sys.dim);
    for (int i = 0; i < sys.dim; ++i) {
        sys.sz_diag[i] = -s + i;
    }

    // Sx^2 = (S+^2 + S-^2 + S+S- + S-S+) / 4, so only m <-> m+-2 and the
    // diagonal survive.
    sys.sx2 = Eigen::MatrixXd::Zero(sys.dim, sys.dim);
    for (int i = 0; i < sys.dim; ++i) {
        const double m = sys.sz_diag[i];
        sys.sx2(i, i) = 0.5 * (ss1 - m * m);
        if (i + 2 < sys.dim) {
            const double v = 0.25 * std::sqrt((ss1 - m * (m + 1.0)) * (ss1 - (m + 1.0) * (m + 2.0)));
            sys.sx2(i, i + 2) = v;
            sys.sx2(i + 2, i) = v;
        }
    }
    return sys;
}

Eigen::VectorXd parity_diag(const SpinSystem& sys) {
    Eigen::VectorXd p(sys.dim);
    for (int i = 0; i < sys.dim; ++i) {
        // S - m = dim - 1 - i
        p[i] = ((sys.dim - 1 - i) % 2 == 0) ? 1.0 : -1.0;
    }
    return p;
}

} // namespace lmg

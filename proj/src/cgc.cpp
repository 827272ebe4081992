#include "lmg/cgc.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lmg {

double cgc_x(double s) {
    if (s < 0.5 || s > 1.0) {
        throw std::invalid_argument("cgc_x: s must lie in [0.5, 1], got " + std::to_string(s));
    }
    if (s == 0.5) return 0.0;
    if (s == 1.0) return 1.0;
    const double root = std::sqrt(std::max(0.0, (1.0 - s) * (2.0 * s - 1.0)));
    const double arg = (std::sqrt(s) + std::sqrt(2.0 * s - 1.0)) / std::sqrt(1.0 - s);
    // arccot on the principal branch (0, pi)
    const double acot = std::atan2(1.0, arg);
    return 1.0 - (4.0 / M_PI) * acot - (2.0 / (M_PI * s)) * root;
}

double cgc_invert(double x) {
    if (x < 0.0 || x > 1.0) {
        throw std::invalid_argument("cgc_invert: x must lie in [0, 1], got " + std::to_string(x));
    }
    double lo = 0.5;
    double hi = 1.0;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (cgc_x(mid) < x) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace lmg

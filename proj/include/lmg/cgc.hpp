#pragma once

namespace lmg {

// Critical gap curve in integrated-density-of-states coordinates,
//   x_c(s) = 1 - (4/pi) arccot[(sqrt(s)+sqrt(2s-1))/sqrt(1-s)]
//            - (2/(pi s)) sqrt((1-s)(2s-1)),
// on s in [0.5, 1], with x_c(0.5) = 0 and x_c(1) = 1. arccot takes its
// principal branch in (0, pi).
double cgc_x(double s);

// Unique s in [0.5, 1] with cgc_x(s) = x, by bisection to |ds| < 1e-10.
double cgc_invert(double x);

} // namespace lmg

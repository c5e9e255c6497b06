#include "pfr/common.hpp"

#include <cmath>

namespace pfr {

Tolerance::Tolerance(double abs_e, double rel_e) : abs_eps(abs_e), rel_eps(rel_e) {
    if (abs_eps < 0.0 || rel_eps < 0.0) throw error("tolerance components must be nonnegative");
    if (abs_eps == 0.0 && rel_eps == 0.0) throw error("tolerance cannot be identically zero");
}

parse_error::parse_error(const std::string& msg, int line_, int col_)
    : error(msg + " (line " + std::to_string(line_) + ", column " + std::to_string(col_) + ")"),
      line(line_),
      col(col_) {}

Polar polar_of(cdouble z) {
    Polar p;
    p.r = std::abs(z);
    p.theta = std::arg(z);
    // std::arg can return -pi when the imaginary part is a negative zero.
    if (p.theta <= -M_PI) p.theta = M_PI;
    return p;
}

}  // namespace pfr

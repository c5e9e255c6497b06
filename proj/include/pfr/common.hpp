#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace pfr {

using cdouble = std::complex<double>;

// Absolute/relative tolerance pair used throughout the library.  Checks
// against a quantity of magnitude `scale` use abs_eps + rel_eps * scale.
struct Tolerance {
    double abs_eps = 1e-9;
    double rel_eps = 1e-9;

    Tolerance() = default;
    Tolerance(double abs_e, double rel_e);

    double scaled(double scale) const { return abs_eps + rel_eps * scale; }
};

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input text.  line/col are 1-based; col 0 means the whole line.
struct parse_error : error {
    int line = 0;
    int col = 0;
    parse_error(const std::string& msg, int line_, int col_);
};

struct dimension_error : error {
    using error::error;
};

// Singular to tolerance, iteration cap exceeded, inconsistent rank data,
// reconstruction residual above threshold, and similar failures.
struct numerical_error : error {
    using error::error;
};

// Modulus/argument form with the argument in (-pi, pi]; points on the
// negative real axis get theta = +pi regardless of the sign of the
// imaginary zero.
struct Polar {
    double r = 0.0;
    double theta = 0.0;
};

Polar polar_of(cdouble z);

}  // namespace pfr

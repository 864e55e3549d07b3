#pragma once

#include <complex>

namespace hyperwalk::special {

// log Γ(z) on the principal sheet up to multiples of 2πi; the real part is
// log|Γ(z)|. Lanczos (g=7, 9 terms) with reflection for Re z < 1/2.
std::complex<double> lgamma(std::complex<double> z);

// log of sin(π z), stable for large |Im z|.
std::complex<double> log_sin_pi(std::complex<double> z);

double log_sinh(double x);   // x > 0
double log_cosh(double x);
double log_sinhc(double x);  // log(sinh x / x), 0 at x = 0
double sinhc(double x);      // sinh x / x

}  // namespace hyperwalk::special

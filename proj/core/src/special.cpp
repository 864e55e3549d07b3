#include "hyperwalk/special.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace hyperwalk::special {

namespace {

constexpr double kG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

std::complex<double> lgamma_right(std::complex<double> z) {
    z -= 1.0;
    std::complex<double> x = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    const std::complex<double> t = z + kG + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace

std::complex<double> log_sin_pi(std::complex<double> z) {
    using namespace std::complex_literals;
    const double y = z.imag();
    if (std::abs(y) < 1.0) return std::log(std::sin(std::numbers::pi * z));
    if (y > 0.0) {
        // sin(πz) = e^{-iπz}(1 - e^{2iπz}) · i/2
        const std::complex<double> e = std::exp(2.0i * std::numbers::pi * z);
        return -1.0i * std::numbers::pi * z + std::log(1.0 - e) + std::log(0.5i);
    }
    return std::conj(log_sin_pi(std::conj(z)));
}

std::complex<double> lgamma(std::complex<double> z) {
    if (z.real() < 0.5) {
        return std::log(std::numbers::pi) - log_sin_pi(z) - lgamma_right(1.0 - z);
    }
    return lgamma_right(z);
}

double log_sinh(double x) {
    if (x > 20.0) return x - std::numbers::ln2 + std::log1p(-std::exp(-2.0 * x));
    if (x < 0.5) return std::log(x) + log_sinhc(x);
    return std::log(std::sinh(x));
}

double log_cosh(double x) {
    x = std::abs(x);
    return x - std::numbers::ln2 + std::log1p(std::exp(-2.0 * x));
}

namespace {

// sinh(x)/x - 1 without cancellation for small x
double sinhc_m1(double x) {
    const double x2 = x * x;
    if (x2 < 1.0) {
        double term = x2 / 6.0, sum = term;
        for (int k = 2; k < 30; ++k) {
            term *= x2 / ((2.0 * k) * (2.0 * k + 1.0));
            sum += term;
            if (term < 1e-18 * sum) break;
        }
        return sum;
    }
    return std::sinh(x) / x - 1.0;
}

}  // namespace

double log_sinhc(double x) {
    x = std::abs(x);
    if (x < 1.0) return std::log1p(sinhc_m1(x));
    return log_sinh(x) - std::log(x);
}

double sinhc(double x) {
    if (std::abs(x) < 1.0) return 1.0 + sinhc_m1(x);
    return std::sinh(x) / x;
}

}  // namespace hyperwalk::special

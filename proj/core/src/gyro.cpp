#include "hyperwalk/gyro.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hyperwalk/errors.hpp"

namespace hyperwalk {

namespace kernel {

double mobius_add(std::span<const double> x, std::span<const double> y, std::span<double> out) {
    // extended-precision accumulation: near the boundary the numerator and
    // denominator both cancel and double loses ~4 digits
    using ld = long double;
    ld xy = 0, xx = 0, yy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        xy += static_cast<ld>(x[i]) * y[i];
        xx += static_cast<ld>(x[i]) * x[i];
        yy += static_cast<ld>(y[i]) * y[i];
    }
    // grouped so that ⊖x⊕x and x⊕(⊖x) cancel to an exact zero
    const ld a = (1 + xy) + (xy + yy);
    const ld b = 1 - xx;
    const ld d = 1 + 2 * xy + xx * yy;
    double n2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double v = static_cast<double>((a * x[i] + b * y[i]) / d);
        out[i] = v;
        n2 += v * v;
    }
    if (!(n2 < kBoundaryGuard * kBoundaryGuard)) throw DomainError("mobius_add left the ball");
    return n2;
}

double mobius_scalar(double gamma, std::span<const double> z, std::span<double> out) {
    const double r = std::sqrt(dot(z, z));
    if (r == 0.0) {
        for (std::size_t i = 0; i < z.size(); ++i) out[i] = 0.0;
        return 0.0;
    }
    const double s = std::tanh(gamma * std::atanh(r)) / r;
    double n2 = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        out[i] = s * z[i];
        n2 += out[i] * out[i];
    }
    if (!(n2 < kBoundaryGuard * kBoundaryGuard)) throw DomainError("mobius_scalar left the ball");
    return n2;
}

}  // namespace kernel

namespace {

void same_dim(const BallPoint& a, const BallPoint& b) {
    if (a.size() != b.size()) throw std::invalid_argument("ball points of different dimension");
}

}  // namespace

BallPoint mobius_add(const BallPoint& x, const BallPoint& y) {
    same_dim(x, y);
    std::vector<double> out(x.size());
    kernel::mobius_add(x.span(), y.span(), out);
    return BallPoint(std::move(out));
}

BallPoint mobius_neg(const BallPoint& x) {
    std::vector<double> out(x.coords());
    for (double& v : out) v = -v;
    return BallPoint(std::move(out));
}

BallPoint mobius_scalar(double gamma, const BallPoint& z) {
    std::vector<double> out(z.size());
    kernel::mobius_scalar(gamma, z.span(), out);
    return BallPoint(std::move(out));
}

BallPoint gyration(const BallPoint& a, const BallPoint& b, const BallPoint& c) {
    return mobius_add(mobius_neg(mobius_add(a, b)), mobius_add(a, mobius_add(b, c)));
}

BallPoint translate(const BallPoint& a, const BallPoint& x) { return mobius_add(mobius_neg(a), x); }

double translate_conformal_factor(const BallPoint& a, const BallPoint& x) {
    same_dim(a, x);
    const double ax = dot(a.span(), x.span());
    return (1.0 - a.norm2()) / (1.0 - 2.0 * ax + x.norm2() * a.norm2());
}

BallPoint geodesic_point(const BallPoint& a, const BallPoint& b, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("geodesic parameter must lie in [0,1]");
    return mobius_add(a, mobius_scalar(t, b));
}

BallPoint sturm_step(const BallPoint& s_prev, const BallPoint& z, long long k) {
    if (k < 1) throw std::invalid_argument("sturm_step requires k >= 1");
    const BallPoint step = mobius_add(mobius_neg(s_prev), z);
    return mobius_add(s_prev, mobius_scalar(1.0 / static_cast<double>(k), step));
}

}  // namespace hyperwalk

#include "hyperwalk/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hyperwalk/errors.hpp"

namespace hyperwalk {

Dimension::Dimension(int n) : n_(n) {
    if (n < 2) throw std::invalid_argument("dimension must be >= 2, got " + std::to_string(n));
}

BallPoint::BallPoint(std::vector<double> coords) : x_(std::move(coords)) {
    if (x_.size() < 2) throw std::invalid_argument("ball point needs at least 2 coordinates");
    for (double v : x_)
        if (!std::isfinite(v)) throw DomainError("non-finite ball coordinate");
    if (norm() >= kBoundaryGuard) throw DomainError("point on or outside the boundary guard of the ball");
}

BallPoint BallPoint::origin(Dimension n) { return BallPoint(std::vector<double>(n.value(), 0.0)); }

BallPoint BallPoint::axis(Dimension n, std::size_t k, double r) {
    std::vector<double> v(n.value(), 0.0);
    v.at(k) = r;
    return BallPoint(std::move(v));
}

double dot(std::span<const double> a, std::span<const double> b) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double BallPoint::norm2() const noexcept { return dot(x_, x_); }
double BallPoint::norm() const noexcept { return std::sqrt(norm2()); }

GeodesicPolar::GeodesicPolar(double e, std::vector<double> th) : eta(e), theta(std::move(th)) {
    if (!(eta >= 0.0) || !std::isfinite(eta)) throw std::invalid_argument("eta must be finite and >= 0");
    if (theta.size() < 2) throw std::invalid_argument("theta needs at least 2 components");
    const double nt = std::sqrt(dot(theta, theta));
    if (std::abs(nt - 1.0) > 1e-12) throw std::invalid_argument("theta must be a unit vector");
}

double eta_of_radius(double r) { return 2.0 * std::atanh(r); }
double radius_of_eta(double eta) { return std::tanh(0.5 * eta); }

GeodesicPolar to_geodesic(const BallPoint& p) {
    const double r = p.norm();
    std::vector<double> theta(p.size(), 0.0);
    if (r == 0.0) {
        theta[0] = 1.0;
        return GeodesicPolar(0.0, std::move(theta));
    }
    for (std::size_t i = 0; i < p.size(); ++i) theta[i] = p[i] / r;
    // renormalize so the unit-vector check is not defeated by rounding in tiny r
    const double nt = std::sqrt(dot(theta, theta));
    for (double& v : theta) v /= nt;
    return GeodesicPolar(eta_of_radius(r), std::move(theta));
}

BallPoint from_geodesic(const GeodesicPolar& g) {
    const double r = radius_of_eta(g.eta);
    std::vector<double> x(g.theta.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = r * g.theta[i];
    return BallPoint(std::move(x));
}

double volume_weight(const BallPoint& p) {
    const int n = static_cast<int>(p.size());
    return std::pow(2.0, n) * std::pow(1.0 - p.norm2(), -n);
}

double log_sphere_area(Dimension n) {
    const double h = 0.5 * n.value();
    return std::log(2.0) + h * std::log(std::numbers::pi) - std::lgamma(h);
}

double sphere_area(Dimension n) { return std::exp(log_sphere_area(n)); }

double radial_area_weight(double eta, Dimension n) {
    if (eta < 0.0) throw std::invalid_argument("eta must be >= 0");
    return std::pow(std::sinh(eta), n.value() - 1);
}

}  // namespace hyperwalk

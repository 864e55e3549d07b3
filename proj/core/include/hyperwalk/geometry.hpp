#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hyperwalk {

// Largest admissible Euclidean norm of a ball point.
inline constexpr double kBoundaryGuard = 1.0 - 1e-12;

class Dimension {
public:
    explicit Dimension(int n);

    int value() const noexcept { return n_; }
    operator int() const noexcept { return n_; }
    double rho() const noexcept { return 0.5 * (n_ - 1); }
    bool odd() const noexcept { return (n_ % 2) != 0; }
    // n = 2m+1 (odd) or n = 2m (even)
    int half() const noexcept { return odd() ? (n_ - 1) / 2 : n_ / 2; }

    friend bool operator==(Dimension a, Dimension b) noexcept { return a.n_ == b.n_; }

private:
    int n_;
};

class BallPoint {
public:
    explicit BallPoint(std::vector<double> coords);

    static BallPoint origin(Dimension n);
    static BallPoint axis(Dimension n, std::size_t k, double r);

    std::size_t size() const noexcept { return x_.size(); }
    Dimension dim() const { return Dimension(static_cast<int>(x_.size())); }
    const std::vector<double>& coords() const noexcept { return x_; }
    std::span<const double> span() const noexcept { return x_; }
    double operator[](std::size_t i) const { return x_[i]; }

    double norm() const noexcept;
    double norm2() const noexcept;

private:
    std::vector<double> x_;
};

struct GeodesicPolar {
    GeodesicPolar(double eta, std::vector<double> theta);

    double eta;
    std::vector<double> theta;
};

double dot(std::span<const double> a, std::span<const double> b) noexcept;

GeodesicPolar to_geodesic(const BallPoint& p);
BallPoint from_geodesic(const GeodesicPolar& g);

double eta_of_radius(double r);
double radius_of_eta(double eta);

double volume_weight(const BallPoint& p);
double sphere_area(Dimension n);
double log_sphere_area(Dimension n);
double radial_area_weight(double eta, Dimension n);

}  // namespace hyperwalk

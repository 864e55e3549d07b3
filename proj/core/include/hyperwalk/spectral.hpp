#pragma once

#include <functional>
#include <vector>

#include "hyperwalk/geometry.hpp"
#include "hyperwalk/radial_density.hpp"

namespace hyperwalk {

// Spherical function φ_λ(η) by three routes.
double phi_integral(double lambda, double eta, Dimension n);
double phi_series(double lambda, double eta, Dimension n);
double phi(double lambda, double eta, Dimension n);
double phi_legendre_check(double lambda, double eta, Dimension n);

// −∂²_λ φ_λ(η) at λ = 0
double spherical_second_moment(double eta, Dimension n);

double log_plancherel_density(double lambda, Dimension n);
double plancherel_density(double lambda, Dimension n);  // |c(λ)|^{-2}
double inversion_constant(Dimension n);

class PlancherelDensity {
public:
    explicit PlancherelDensity(Dimension n) : n_(n) {}
    double operator()(double lambda) const { return plancherel_density(lambda, n_); }
    Dimension dim() const { return n_; }

private:
    Dimension n_;
};

// λ-tabulation on a composite Gauss–Legendre grid over [0, Λmax]; `weights`
// are the quadrature weights of that grid.
struct SpectralFunction {
    std::vector<double> lambdas;
    std::vector<double> values;
    std::vector<double> weights;
    Dimension dim{2};

    double lambda_max() const { return lambdas.empty() ? 0.0 : lambdas.back(); }
};

SpectralFunction tabulate(const std::function<double(double)>& f, double lambda_max, Dimension n);

// Smallest λ on a 0.5-grid past which envelope(λ)·λ^{n−1} stays below `tol`.
// Points where |envelope| is at or below `noise_floor` also count as decayed.
double choose_cutoff(const std::function<double(double)>& envelope, Dimension n, double tol = 1e-14,
                     double cap = 1e4, double noise_floor = 0.0);

// Tabulate f up to the cutoff chosen from |f| itself, with the noise floor
// set to the rounding level 2·eps·|f(0)|.
SpectralFunction tabulate_decaying(const std::function<double(double)>& f, Dimension n, double tol = 1e-14);

double fh_transform(const RadialProfile& p, double lambda);
double fh_inverse(const SpectralFunction& f, double eta);

double char2(const RadialProfile& p, double lambda);
double variance_direct(const RadialProfile& p);

double walk_transform(const RadialProfile& p, long long N, double lambda);
SpectralFunction walk_spectrum(const RadialProfile& p, long long N);
double walk_density(const RadialProfile& p, long long N, double eta);

// (f*g)(x) at ‖x‖ = tanh(η/2) by direct quadrature over y.
double convolve_direct(const RadialProfile& f, const RadialProfile& g, double eta);
// f*g as an (unnormalized) profile for moment and transform queries.
RadialProfile convolve_profile(const RadialProfile& f, const RadialProfile& g);

}  // namespace hyperwalk

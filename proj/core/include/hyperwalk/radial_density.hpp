#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "hyperwalk/geometry.hpp"

namespace hyperwalk {

using RandomStream = std::mt19937_64;
using RadialFn = std::function<double(double)>;

struct ProfileOptions {
    bool normalize = true;
    int initial_cells = 512;   // CDF table seed grid
    int base_panels = 64;      // Gauss–Legendre panels used for moments
};

// Discretization of μ_{Z,R}: ∫ F dμ ≈ Σ w_i F(eta_i).
struct MeasureRule {
    std::vector<double> eta;
    std::vector<double> w;
};

// Radial density g (per unit Riemannian volume) supported on [0, eta_max).
class RadialProfile {
public:
    static RadialProfile from_function(RadialFn raw, double eta_max, Dimension dim,
                                       std::string description, ProfileOptions opt = {});

    Dimension dim() const;
    double eta_max() const;
    double norm_const() const;
    double total_mass() const;
    const std::string& description() const;

    double density(double eta) const;  // g(η)
    double pdf(double eta) const;      // Ω_{n-1} g(η) sinh^{n-1} η
    double cdf(double eta) const;
    // CDF from the cubic Hermite table used by quantile(); cheaper than cdf()
    double cdf_interp(double eta) const;
    double quantile(double u) const;

    // ∫ F dμ. `frequency` is the largest oscillation rate of F in η and
    // sets the panel count.
    double expect(const RadialFn& f, double frequency = 0.0) const;
    std::shared_ptr<const MeasureRule> rule(double frequency = 0.0) const;

    std::size_t cdf_cells() const;

private:
    struct Impl;
    explicit RadialProfile(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

RadialProfile make_bump(double eta_max, Dimension dim);
RadialProfile make_table(std::vector<double> etas, std::vector<double> values, Dimension dim);
RadialProfile scale_profile(const RadialProfile& p, double eps);

double pdf_eta(const RadialProfile& p, double eta);
double cdf_eta(const RadialProfile& p, double eta);
double sample_eta(const RadialProfile& p, double u);

// uniform draw in the open interval (0,1) from 53 random bits
double uniform_open(RandomStream& rng);
// uniform direction on S^{n-1}
void sample_direction(RandomStream& rng, std::span<double> out);
BallPoint sample_point(const RadialProfile& p, RandomStream& rng);

double mean_eta(const RadialProfile& p);
double second_moment(const RadialProfile& p);
double limit_time(const RadialProfile& p);

}  // namespace hyperwalk

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperwalk/radial_density.hpp"
#include "hyperwalk/walk_sim.hpp"

namespace hyperwalk {

struct Verdict {
    std::string name;
    double statistic = 0.0;
    double threshold = 0.0;
    std::optional<double> fitted_slope;
    std::optional<std::pair<double, double>> window;
    bool pass = false;
    std::map<std::string, double> details;
    std::map<std::string, std::string> notes;
    std::uint64_t seed = 0;
};

// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// Two-sided KS distance between a sample and a CDF.
template <class Cdf>
double ks_distance(std::vector<double> sample, Cdf&& cdf);

// Radial law of Ψ(t,·) as a profile (mass ≈ 1) for CDF queries.
RadialProfile limit_law(double t, Dimension n);

struct CltOptions {
    double t_scale = 1.0;  // multiplies the limit time; 2.0 is the negative control
    double threshold = 0.01;
    int threads = 0;
};

Verdict clt_check(const RadialProfile& p, long long N, long long paths, std::uint64_t seed, CltOptions opt = {});
// KS of an existing clt ensemble against Ψ(t_scale·t, ·)
Verdict clt_check_ensemble(const WalkEnsemble& e, CltOptions opt = {});

struct LltOptions {
    double t_scale = 1.0;  // 2.0 compares against ψ(t,·) instead of Ψ(t,·)
    int grid_points = 200;
};

Verdict llt_check(const RadialProfile& p, const std::vector<long long>& Ns, LltOptions opt = {});

struct LlnOptions {
    Scaling scaling = Scaling::lln;  // clt here is the negative control
    int threads = 0;
};

Verdict lln_check(const RadialProfile& p, const std::vector<long long>& Ns, long long paths, std::uint64_t seed,
                  LlnOptions opt = {});

Verdict variance_rate_check(const RadialProfile& p, const std::vector<long long>& Ns);

Verdict gyro_property_suite(const std::vector<int>& dims, long long trials, std::uint64_t seed);

// ---- implementation of the template ----

template <class Cdf>
double ks_distance(std::vector<double> sample, Cdf&& cdf) {
    std::sort(sample.begin(), sample.end());
    const double m = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max(d, std::max(f - static_cast<double>(i) / m, static_cast<double>(i + 1) / m - f));
    }
    return d;
}

}  // namespace hyperwalk

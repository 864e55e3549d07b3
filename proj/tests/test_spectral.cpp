#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "hyperwalk/errors.hpp"
#include "hyperwalk/quadrature.hpp"
#include "hyperwalk/radial_density.hpp"
#include "hyperwalk/spectral.hpp"

using namespace hyperwalk;
using boost::math::quadrature::gauss_kronrod;
constexpr double pi = std::numbers::pi;

namespace {

double phi3(double lam, double eta) {
    if (eta == 0.0) return 1.0;
    if (lam == 0.0) return eta / std::sinh(eta);
    return std::sin(lam * eta) / (lam * std::sinh(eta));
}

// Integral representation evaluated by tanh-sinh with the endpoint distance
// passed separately, so cosh η − cosh s keeps full precision near s = η.
double phi_tanh_sinh(double lam, double eta, int n) {
    boost::math::quadrature::tanh_sinh<double> ts;
    const double e = 0.5 * (n - 3);
    const double inner = ts.integrate([&](double s, double sc) {
        // sc is the distance to the nearer endpoint
        const double d = (s > 0.5 * eta) ? sc : eta - s;
        const double gap = 2.0 * std::sinh(eta - 0.5 * d) * std::sinh(0.5 * d);
        return std::pow(gap, e) * std::cos(lam * s);
    }, 0.0, eta);
    const double c = std::pow(2.0, 0.5 * (n - 1)) * std::tgamma(0.5 * n) / (std::sqrt(pi) * std::tgamma(0.5 * (n - 1)));
    return c * std::pow(std::sinh(eta), 2 - n) * inner;
}

}  // namespace

TEST(Phi, OneAtOrigin) {
    for (int n : {2, 3, 4, 7})
        for (double lam : {0.0, 1.0, 37.0}) {
            EXPECT_EQ(phi(lam, 0.0, Dimension(n)), 1.0);
            EXPECT_EQ(phi_series(lam, 0.0, Dimension(n)), 1.0);
            EXPECT_EQ(phi_integral(lam, 0.0, Dimension(n)), 1.0);
        }
}

TEST(Phi, ThreeDimensionalClosedForm) {
    for (double lam : {0.0, 0.3, 1.0, 5.0, 40.0})
        for (double eta : {0.01, 0.4, 1.0, 3.0, 8.0})
            EXPECT_NEAR(phi_integral(lam, eta, Dimension(3)), phi3(lam, eta), 1e-12) << lam << " " << eta;
}

TEST(Phi, TwoDimensionalAgainstTanhSinh) {
    const double v = phi(0.0, 1.0, Dimension(2));
    EXPECT_GT(v, 0.0);
    EXPECT_LT(v, 1.0);
    for (int n : {2, 4})
        for (double lam : {0.0, 0.7, 6.0})
            for (double eta : {0.3, 1.0, 2.5})
                EXPECT_NEAR(phi_integral(lam, eta, Dimension(n)), phi_tanh_sinh(lam, eta, n), 1e-11)
                    << n << " " << lam << " " << eta;
}

TEST(Phi, SeriesMatchesIntegral) {
    double worst = 0;
    for (int n : {2, 3, 4, 5})
        for (double lam = 0.0; lam <= 20.0; lam += 0.5)
            for (double eta = 0.0; eta <= 0.5; eta += 0.05)
                worst = std::max(worst, std::abs(phi_series(lam, eta, Dimension(n)) - phi_integral(lam, eta, Dimension(n))));
    EXPECT_LT(worst, 1e-10);
    for (double lam : {0.5, 3.0, 20.0})
        for (double eta : {0.05, 0.25, 0.5}) EXPECT_NEAR(phi_series(lam, eta, Dimension(3)), phi3(lam, eta), 1e-12);
}

TEST(Phi, DispatcherContinuousAtSwitch) {
    for (int n : {2, 4, 5}) {
        const Dimension d(n);
        // λ·sinh(η/2) = 0.5 boundary at η = 0.3
        const double eta = 0.3, lam = 0.5 / std::sinh(0.15);
        for (double f : {1 - 1e-9, 1 + 1e-9}) {
            EXPECT_NEAR(phi(lam * f, eta, d), phi_integral(lam * f, eta, d), 1e-10);
            EXPECT_NEAR(phi(lam * f, eta, d), phi_series(lam * f, eta, d), 1e-10);
        }
        for (double e : {0.5 - 1e-12, 0.5 + 1e-12}) EXPECT_NEAR(phi(0.2, e, d), phi_series(0.2, e, d), 1e-10);
    }
}

TEST(Phi, DominatedByZeroFrequency) {
    double min_gap = 1.0;
    for (int n : {2, 3, 4, 5}) {
        const Dimension d(n);
        for (double eta = 0.0; eta <= 6.0; eta += 0.25) {
            const double p0 = phi(0.0, eta, d);
            EXPECT_LE(p0, 1.0 + 1e-15);
            for (double lam = 0.0; lam <= 30.0; lam += 0.37) {
                const double v = phi(lam, eta, d);
                EXPECT_LE(std::abs(v), p0 + 1e-13) << n << " " << lam << " " << eta;
                if (lam * eta / 2 > 1.0) {
                    EXPECT_LT(std::abs(v), 1.0);
                    min_gap = std::min(min_gap, 1.0 - std::abs(v));
                }
            }
        }
    }
    RecordProperty("min_gap_below_one", std::to_string(min_gap));
    EXPECT_GT(min_gap, 0.0);
}

TEST(Phi, EvenInLambda) {
    for (double lam : {0.3, 2.0, 11.0})
        EXPECT_EQ(phi(-lam, 1.2, Dimension(4)), phi(lam, 1.2, Dimension(4)));
}

TEST(PhiLegendre, MatchesOddDimensions) {
    EXPECT_NEAR(phi_legendre_check(1.0, 1.0, Dimension(3)), std::sin(1.0) / std::sinh(1.0), 1e-12);
    EXPECT_NEAR(phi_legendre_check(2.0, 0.0, Dimension(3)), 1.0, 1e-15);
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> L(0.0, 10.0), E(0.01, 3.0);
    for (int n : {3, 5})
        for (int i = 0; i < 100; ++i) {
            const double lam = L(rng), eta = E(rng);
            EXPECT_NEAR(phi_legendre_check(lam, eta, Dimension(n)), phi(lam, eta, Dimension(n)), 1e-10) << n << " " << lam << " " << eta;
        }
    EXPECT_THROW(phi_legendre_check(1.0, 1.0, Dimension(4)), std::invalid_argument);
}

TEST(Plancherel, ZeroAtOriginAndPositive) {
    for (int n : {2, 3, 4, 5}) {
        EXPECT_EQ(plancherel_density(0.0, Dimension(n)), 0.0);
        for (double lam : {1e-3, 0.5, 30.0}) EXPECT_GT(plancherel_density(lam, Dimension(n)), 0.0);
    }
}

TEST(Plancherel, ReflectionIdentityOracles) {
    for (double lam : {0.01, 0.1, 0.5, 1.0, 3.0, 10.0, 50.0}) {
        const double th = std::tanh(pi * lam);
        EXPECT_NEAR(plancherel_density(lam, Dimension(2)) / (pi * lam * th), 1.0, 1e-11) << lam;
        EXPECT_NEAR(plancherel_density(lam, Dimension(4)) / (pi * lam * (0.25 + lam * lam) * th / 16.0), 1.0, 1e-11) << lam;
        EXPECT_NEAR(plancherel_density(lam, Dimension(5)) / (lam * lam * (1 + lam * lam) / 36.0), 1.0, 1e-11) << lam;
    }
    const double r0 = plancherel_density(0.1, Dimension(3)) / 0.01;
    for (double lam = 0.1; lam <= 50.0; lam *= 1.3)
        EXPECT_NEAR(plancherel_density(lam, Dimension(3)) / (lam * lam) / r0, 1.0, 1e-10);
    // C_3 |c|^{-2} = λ²/(2π²)
    EXPECT_NEAR(inversion_constant(Dimension(3)) * plancherel_density(2.0, Dimension(3)), 4.0 / (2 * pi * pi), 1e-13);
}

TEST(Plancherel, LogLogSlopes) {
    for (int n : {2, 3, 4, 5, 6}) {
        const Dimension d(n);
        const double small = (std::log(plancherel_density(2e-3, d)) - std::log(plancherel_density(1e-3, d))) / std::log(2.0);
        EXPECT_NEAR(small, 2.0, 0.05) << n;
        const double large = (std::log(plancherel_density(1e3, d)) - std::log(plancherel_density(1e2, d))) / std::log(10.0);
        EXPECT_NEAR(large, n - 1.0, 0.05) << n;
        EXPECT_NEAR(log_plancherel_density(7.0, d), std::log(plancherel_density(7.0, d)), 1e-13);
    }
}

TEST(Cutoff, ThrowsWhenEnvelopeDoesNotDecay) {
    EXPECT_THROW(choose_cutoff([](double) { return 1.0; }, Dimension(3)), NumericalError);
    const double c = choose_cutoff([](double l) { return std::exp(-l * l); }, Dimension(3));
    EXPECT_GT(c, 5.0);
    EXPECT_LT(c, 20.0);
}

TEST(Transform, EvenAndNearDeltaLimit) {
    const auto p = make_bump(1.0, Dimension(4));
    for (double lam : {0.5, 3.0}) EXPECT_EQ(fh_transform(p, -lam), fh_transform(p, lam));
    const auto d = make_bump(1e-6, Dimension(3));
    for (double lam : {0.0, 1.0, 100.0}) EXPECT_NEAR(fh_transform(d, lam), 1.0, 1e-8);
}

TEST(Transform, ThreeDimensionalBumpAgainstKronrod) {
    const auto p = make_bump(1.0, Dimension(3));
    for (double lam : {0.0, 0.5, 2.0, 10.0, 60.0}) {
        const double oracle = gauss_kronrod<double, 61>::integrate(
            [&](double e) { return p.pdf(e) * phi3(lam, e); }, 0.0, 1.0, 8, 1e-14);
        EXPECT_NEAR(fh_transform(p, lam), oracle, 1e-10) << lam;
    }
}

TEST(Transform, InverseRoundTrip) {
    const auto p = make_bump(1.0, Dimension(3));
    const auto F = tabulate_decaying([&](double l) { return fh_transform(p, l); }, Dimension(3));
    for (double eta : {0.0, 0.1, 0.3, 0.5, 0.7, 0.9})
        EXPECT_NEAR(fh_inverse(F, eta), p.density(eta), 1e-8) << eta;
    for (double eta : {1.2, 2.0}) EXPECT_NEAR(fh_inverse(F, eta), 0.0, 1e-8);
}

TEST(Char2, BasicProperties) {
    const auto p = make_bump(1.3, Dimension(3));
    EXPECT_EQ(char2(p, 0.0), 1.0);
    for (double lam = 0.0; lam < 40.0; lam += 0.25) EXPECT_LE(std::abs(char2(p, lam)), 1.0);
    // Richardson-extrapolated first and third central differences at 0
    auto d1 = [&](double h) { return (char2(p, h) - char2(p, -h)) / (2 * h); };
    auto d3 = [&](double h) {
        return (char2(p, 2 * h) - 2 * char2(p, h) + 2 * char2(p, -h) - char2(p, -2 * h)) / (2 * h * h * h);
    };
    for (auto* f : {&d1}) {
        const double r = (4 * (*f)(5e-3) - (*f)(1e-2)) / 3;
        EXPECT_LT(std::abs(r), 1e-6);
    }
    const double r3 = (4 * d3(5e-3) - d3(1e-2)) / 3;
    EXPECT_LT(std::abs(r3), 1e-6);
}

TEST(Variance, MatchesSecondDerivativeOfChar2) {
    for (int n : {2, 3, 5}) {
        const auto p = make_bump(1.0, Dimension(n));
        auto d2 = [&](double h) { return (char2(p, h) - 2.0 + char2(p, -h)) / (h * h); };
        const double h = 1e-3;
        const double rich = (4 * d2(h / 2) - d2(h)) / 3;
        EXPECT_NEAR(variance_direct(p) / -rich, 1.0, 1e-6) << n;
    }
    EXPECT_LT(variance_direct(make_bump(1e-6, Dimension(3))), 1e-11);
}

TEST(Variance, ScaledLimitIsSecondMomentOverN) {
    for (int n : {2, 3}) {
        const auto p = make_bump(1.0, Dimension(n));
        const double target = second_moment(p) / n;
        auto r = [&](double e) { return variance_direct(scale_profile(p, e)) / (e * e); };
        const double r1 = r(0.1), r2 = r(0.05), r4 = r(0.025);
        EXPECT_LT(std::abs(r4 - target), std::abs(r2 - target));
        EXPECT_LT(std::abs(r2 - target), std::abs(r1 - target));
        const double extrap = (4 * r4 - r2) / 3;
        EXPECT_NEAR(extrap / target, 1.0, 1e-5) << n;
    }
}

TEST(WalkTransform, SingleStepAndZeroFrequency) {
    const auto p = make_bump(1.0, Dimension(3));
    EXPECT_EQ(walk_transform(p, 1, 0.7), fh_transform(p, 0.7));
    for (long long N : {2LL, 16LL, 1000LL}) {
        const double v = walk_transform(p, N, 0.0);
        EXPECT_GT(v, 0.0);
        EXPECT_LE(v, 1.0);
    }
    EXPECT_THROW(walk_transform(p, 0, 1.0), std::invalid_argument);
}

TEST(WalkTransform, ConvergesToGaussianInLambda) {
    const auto p = make_bump(1.0, Dimension(3));
    const double t = limit_time(p);
    for (double lam : {0.5, 1.0, 2.0}) {
        double prev = 1.0;
        for (long long N : {100LL, 1000LL, 10000LL}) {
            const double ratio = walk_transform(p, N, lam) / walk_transform(p, N, 0.0);
            const double err = std::abs(ratio - std::exp(-lam * lam * t / 2));
            EXPECT_LT(err, prev);
            prev = err;
        }
        EXPECT_LT(prev, 1e-4);
    }
}

TEST(WalkDensity, UnitMassAndSingleStep) {
    const Dimension n(3);
    const auto p = make_bump(1.0, n);
    const auto F = walk_spectrum(p, 16);
    const auto rule = quad::composite_gauss_legendre(0.0, 4.0, 10, 20);
    double mass = 0;
    for (std::size_t i = 0; i < rule.x.size(); ++i)
        mass += rule.w[i] * fh_inverse(F, rule.x[i]) * sphere_area(n) * radial_area_weight(rule.x[i], n);
    EXPECT_NEAR(mass, 1.0, 1e-6);
    EXPECT_NEAR(walk_density(p, 16, 0.5), fh_inverse(F, 0.5), 1e-15);
    const auto F1 = walk_spectrum(p, 1);
    for (double eta : {0.0, 0.25, 0.6}) EXPECT_NEAR(fh_inverse(F1, eta), p.density(eta), 1e-8);
}

TEST(Convolution, NearDeltaIsIdentity) {
    for (int n : {2, 3}) {
        const auto f = make_bump(1.0, Dimension(n));
        const auto g = make_bump(1e-3, Dimension(n));
        for (double eta : {0.1, 0.4, 0.8})
            EXPECT_NEAR(convolve_direct(f, g, eta), f.density(eta), 1e-5 * f.density(0.0)) << n << " " << eta;
    }
}

TEST(Convolution, Symmetric) {
    for (int n : {2, 3, 4}) {
        const auto f = make_bump(0.6, Dimension(n)), g = make_bump(0.9, Dimension(n));
        for (double eta : {0.0, 0.2, 0.7, 1.3})
            EXPECT_NEAR(convolve_direct(f, g, eta), convolve_direct(g, f, eta), 1e-8);
    }
}

TEST(Convolution, TransformIsProductAndVarianceAdds) {
    for (int n : {2, 3}) {
        const auto f = make_bump(0.6, Dimension(n)), g = make_bump(0.9, Dimension(n));
        const auto h = convolve_profile(f, g);
        EXPECT_NEAR(h.total_mass(), 1.0, 1e-8);
        for (double lam : {0.0, 0.5, 1.5, 3.0, 4.9})
            EXPECT_NEAR(fh_transform(h, lam), fh_transform(f, lam) * fh_transform(g, lam), 1e-6) << n << " " << lam;
        EXPECT_NEAR(variance_direct(h), variance_direct(f) + variance_direct(g), 1e-6);
    }
}

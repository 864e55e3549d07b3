#include "hyperwalk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "hyperwalk/errors.hpp"
#include "hyperwalk/quadrature.hpp"
#include "hyperwalk/special.hpp"

namespace hyperwalk {

namespace {

constexpr double kPi = std::numbers::pi;

// log of 2^{(n−1)/2} Γ(n/2) / (√π Γ((n−1)/2))
double log_ctilde(int n) {
    return 0.5 * (n - 1) * std::numbers::ln2 + std::lgamma(0.5 * n) - 0.5 * std::log(kPi) - std::lgamma(0.5 * (n - 1));
}

int gegenbauer_nodes(double lambda, double eta, int n) {
    const double want = 24.0 + 0.75 * lambda * eta + 2.0 * eta + n;
    return 8 * static_cast<int>(std::ceil(want / 8.0));
}

// C̃ sinh^{2−n}η ∫_0^η (cosh η − cosh s)^{(n−3)/2} h(s) ds for even h, via
// s = ηu and cosh η − cosh ηu = (η²/2)(1−u²) S(η(1+u)/2) S(η(1−u)/2).
template <class H>
double spherical_average(double eta, int n, int nodes, H&& h) {
    const double a = 0.5 * (n - 3);
    const auto rule = quad::gauss_gegenbauer(nodes, a);
    const double base = log_ctilde(n) - (1.0 + a) * std::numbers::ln2 - (2.0 * a + 1.0) * special::log_sinhc(eta);
    double s = 0.0;
    for (std::size_t i = 0; i < rule->nodes.size(); ++i) {
        const double u = rule->nodes[i];
        double lw = base;
        if (a != 0.0) lw += a * (special::log_sinhc(0.5 * eta * (1.0 + u)) + special::log_sinhc(0.5 * eta * (1.0 - u)));
        s += rule->weights[i] * std::exp(lw) * h(eta * u);
    }
    return s;
}

}  // namespace

double phi_integral(double lambda, double eta, Dimension n) {
    if (eta < 0.0) throw std::invalid_argument("eta must be >= 0");
    lambda = std::abs(lambda);
    if (eta == 0.0) return 1.0;
    return spherical_average(eta, n.value(), gegenbauer_nodes(lambda, eta, n.value()),
                             [lambda](double s) { return std::cos(lambda * s); });
}

double phi_series(double lambda, double eta, Dimension n) {
    if (eta < 0.0) throw std::invalid_argument("eta must be >= 0");
    if (eta == 0.0) return 1.0;
    const double rho = n.rho();
    const double m = 0.5 * n.value() - 1.0;
    const double l2 = lambda * lambda;
    const double sh = std::sinh(0.5 * eta);
    const double x = -sh * sh;
    double term = 1.0, sum = 1.0;
    for (int q = 1; q <= 200; ++q) {
        const double r = rho + q - 1;
        term *= (r * r + l2) / (q * (m + q)) * x;
        sum += term;
        if (std::abs(term) < 1e-16 * std::abs(sum)) return sum;
    }
    throw NumericalError("spherical function series did not converge in 200 terms");
}

double phi(double lambda, double eta, Dimension n) {
    lambda = std::abs(lambda);
    if (eta < 0.0) throw std::invalid_argument("eta must be >= 0");
    if (lambda * std::sinh(0.5 * eta) < 0.5 && eta < 0.5) return phi_series(lambda, eta, n);
    if (n.value() == 3) {
        const double num = (lambda * eta < 1e-8) ? eta : std::sin(lambda * eta) / lambda;
        return num / std::sinh(eta);
    }
    return phi_integral(lambda, eta, n);
}

double phi_legendre_check(double lambda, double eta, Dimension n) {
    if (!n.odd()) throw std::invalid_argument("legendre route implemented for odd n only");
    if (eta < 0.0) throw std::invalid_argument("eta must be >= 0");
    if (eta == 0.0) return 1.0;
    lambda = std::abs(lambda);
    const int k = (n.value() - 3) / 2;
    // ∫_0^η cosh(l s) cos(λ s) ds
    auto cc = [&](int l) {
        const double L = std::abs(l);
        const double den = L * L + lambda * lambda;
        if (den == 0.0) return eta;
        return (L * std::sinh(L * eta) * std::cos(lambda * eta) + lambda * std::cosh(L * eta) * std::sin(lambda * eta)) / den;
    };
    const double ch = std::cosh(eta);
    double total = 0.0;
    double binom_kj = 1.0;
    for (int j = 0; j <= k; ++j) {
        // cosh^j s = 2^{-j} Σ_i C(j,i) cosh((j−2i)s)
        double inner = 0.0, binom_ji = 1.0;
        for (int i = 0; i <= j; ++i) {
            inner += binom_ji * cc(j - 2 * i);
            binom_ji = binom_ji * (j - i) / (i + 1);
        }
        inner = std::ldexp(inner, -j);
        total += binom_kj * std::pow(ch, k - j) * ((j % 2) ? -inner : inner);
        binom_kj = binom_kj * (k - j) / (j + 1);
    }
    return std::exp(log_ctilde(n.value()) + (2 - n.value()) * special::log_sinh(eta)) * total;
}

double spherical_second_moment(double eta, Dimension n) {
    if (eta < 0.0) throw std::invalid_argument("eta must be >= 0");
    if (eta == 0.0) return 0.0;
    return spherical_average(eta, n.value(), gegenbauer_nodes(0.0, eta, n.value()), [](double s) { return s * s; });
}

double log_plancherel_density(double lambda, Dimension n) {
    lambda = std::abs(lambda);
    if (lambda == 0.0) return -std::numeric_limits<double>::infinity();
    const double rho = n.rho();
    using C = std::complex<double>;
    // c(λ) = Γ(2ρ)Γ(iλ) / (Γ(ρ)Γ(ρ+iλ)), normalized so c(−iρ) = 1
    const double log_abs_c = std::lgamma(2.0 * rho) - std::lgamma(rho) + special::lgamma(C(0.0, lambda)).real() -
                             special::lgamma(C(rho, lambda)).real();
    return -2.0 * log_abs_c;
}

double plancherel_density(double lambda, Dimension n) {
    if (lambda == 0.0) return 0.0;
    return std::exp(log_plancherel_density(lambda, n));
}

double inversion_constant(Dimension n) {
    return std::ldexp(1.0, n.value() - 2) / (kPi * sphere_area(n));
}

SpectralFunction tabulate(const std::function<double(double)>& f, double lambda_max, Dimension n) {
    if (!(lambda_max > 0.0)) throw std::invalid_argument("lambda_max must be > 0");
    const int panels = std::max(1, static_cast<int>(std::ceil(lambda_max / 2.0)));
    const auto c = quad::composite_gauss_legendre(0.0, lambda_max, panels, 24);
    SpectralFunction s;
    s.dim = n;
    s.lambdas = c.x;
    s.weights = c.w;
    s.values.resize(c.x.size());
    for (std::size_t i = 0; i < c.x.size(); ++i) {
        s.values[i] = f(c.x[i]);
        if (!std::isfinite(s.values[i])) throw NumericalError("non-finite spectral value");
    }
    return s;
}

double choose_cutoff(const std::function<double(double)>& envelope, Dimension n, double tol, double cap,
                     double noise_floor) {
    const double step = 0.5;
    double last_bad = 0.0;
    for (double lam = step; lam <= cap; lam += step) {
        const double e = std::abs(envelope(lam));
        const double v = e * std::pow(std::max(1.0, lam), n.value() - 1);
        if (!(v < tol) && !(e <= noise_floor)) last_bad = lam;
        if (lam >= 1.5 * last_bad + 10.0) return last_bad + step;
    }
    std::ostringstream os;
    os << "no spectral cutoff below cap " << cap;
    throw NumericalError(os.str());
}

SpectralFunction tabulate_decaying(const std::function<double(double)>& f, Dimension n, double tol) {
    const double floor = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(f(0.0));
    return tabulate(f, choose_cutoff(f, n, tol, 1e4, floor), n);
}

double fh_transform(const RadialProfile& p, double lambda) {
    const Dimension n = p.dim();
    lambda = std::abs(lambda);
    return p.expect([lambda, n](double eta) { return phi(lambda, eta, n); }, lambda);
}

double fh_inverse(const SpectralFunction& f, double eta) {
    if (eta < 0.0) throw std::invalid_argument("eta must be >= 0");
    const Dimension n = f.dim;
    double s = 0.0;
    for (std::size_t i = 0; i < f.lambdas.size(); ++i) {
        if (f.values[i] == 0.0) continue;
        const double lam = f.lambdas[i];
        s += f.weights[i] * f.values[i] * phi(lam, eta, n) * plancherel_density(lam, n);
    }
    return inversion_constant(n) * s;
}

double char2(const RadialProfile& p, double lambda) {
    if (lambda == 0.0) return 1.0;
    const double f0 = fh_transform(p, 0.0);
    if (!(f0 > 0.0)) throw NumericalError("transform at zero is not positive");
    return fh_transform(p, lambda) / f0;
}

double variance_direct(const RadialProfile& p) {
    const Dimension n = p.dim();
    const double f0 = fh_transform(p, 0.0);
    if (!(f0 > 0.0)) throw NumericalError("transform at zero is not positive");
    return p.expect([n](double eta) { return spherical_second_moment(eta, n); }) / f0;
}

double walk_transform(const RadialProfile& p, long long N, double lambda) {
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    const RadialProfile q = scale_profile(p, 1.0 / std::sqrt(static_cast<double>(N)));
    return std::pow(fh_transform(q, lambda), static_cast<double>(N));
}

SpectralFunction walk_spectrum(const RadialProfile& p, long long N) {
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    const RadialProfile q = scale_profile(p, 1.0 / std::sqrt(static_cast<double>(N)));
    const double dN = static_cast<double>(N);
    return tabulate_decaying([&q, dN](double lam) { return std::pow(fh_transform(q, lam), dN); }, p.dim());
}

double walk_density(const RadialProfile& p, long long N, double eta) {
    return fh_inverse(walk_spectrum(p, N), eta);
}

double convolve_direct(const RadialProfile& f, const RadialProfile& g, double eta) {
    if (!(f.dim() == g.dim())) throw std::invalid_argument("profiles of different dimension");
    if (eta < 0.0) throw std::invalid_argument("eta must be >= 0");
    const int n = f.dim().value();
    const double lo = std::max(0.0, eta - f.eta_max());
    const double hi = std::min(g.eta_max(), eta + f.eta_max());
    if (!(lo < hi)) return 0.0;

    // Ω_{n−2} and ∫_0^π sin^{n−2}θ dθ
    const double omega2 = 2.0 * std::pow(kPi, 0.5 * (n - 1)) / std::tgamma(0.5 * (n - 1));
    const double sphere_int = std::sqrt(kPi) * std::tgamma(0.5 * (n - 1)) / std::tgamma(0.5 * n);

    const double r = std::tanh(0.5 * eta);
    const double ch = std::cosh(eta), sh = std::sinh(eta);
    const double ch_f = std::cosh(f.eta_max());
    const auto outer = quad::composite_gauss_legendre(lo, hi, 8, 20);
    const auto inner = quad::gauss_legendre(20);
    constexpr int kInnerPanels = 4;

    double total = 0.0;
    for (std::size_t i = 0; i < outer.x.size(); ++i) {
        const double ey = outer.x[i];
        const double gy = g.density(ey);
        if (gy == 0.0) continue;
        const double jac = std::pow(std::sinh(ey), n - 1);
        double in = 0.0;
        if (eta == 0.0) {
            in = f.density(ey) * sphere_int;
        } else {
            const double c0 = (ch * std::cosh(ey) - ch_f) / (sh * std::sinh(ey));
            if (c0 >= 1.0) continue;
            const double tmax = c0 <= -1.0 ? kPi : std::acos(c0);
            const double ry = std::tanh(0.5 * ey);
            const double width = tmax / kInnerPanels;
            for (int pnl = 0; pnl < kInnerPanels; ++pnl) {
                const double mid = (pnl + 0.5) * width, h = 0.5 * width;
                for (std::size_t j = 0; j < inner->nodes.size(); ++j) {
                    const double th = mid + h * inner->nodes[j];
                    const double ct = std::cos(th);
                    // ‖T_y x‖² = ‖x − y‖² / (1 − 2⟨x,y⟩ + ‖x‖²‖y‖²)
                    const double num = r * r - 2.0 * r * ry * ct + ry * ry;
                    const double den = 1.0 - 2.0 * r * ry * ct + r * r * ry * ry;
                    const double d = 2.0 * std::atanh(std::sqrt(std::max(0.0, num / den)));
                    const double fv = f.density(d);
                    if (fv == 0.0) continue;
                    in += h * inner->weights[j] * fv * (n == 2 ? 1.0 : std::pow(std::sin(th), n - 2));
                }
            }
        }
        total += outer.w[i] * gy * jac * in;
    }
    return omega2 * total;
}

RadialProfile convolve_profile(const RadialProfile& f, const RadialProfile& g) {
    ProfileOptions opt;
    opt.normalize = false;
    opt.initial_cells = 64;
    std::ostringstream os;
    os << "(" << f.description() << ")*(" << g.description() << ")";
    return RadialProfile::from_function([f, g](double eta) { return convolve_direct(f, g, eta); },
                                        f.eta_max() + g.eta_max(), f.dim(), os.str(), opt);
}

}  // namespace hyperwalk

#include "hyperwalk/heat_kernel.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <tuple>

#include "hyperwalk/special.hpp"

namespace hyperwalk {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kSeriesOrder = 24;  // powers of η² kept near the origin

using Poly = std::vector<double>;  // coefficients in x = η²

Poly mul(const Poly& p, const Poly& q) {
    Poly r(kSeriesOrder + 1, 0.0);
    for (int i = 0; i <= kSeriesOrder; ++i)
        for (int j = 0; i + j <= kSeriesOrder; ++j) r[i + j] += p[i] * q[j];
    return r;
}

Poly power(const Poly& p, int e) {
    Poly r(kSeriesOrder + 1, 0.0);
    r[0] = 1.0;
    for (int i = 0; i < e; ++i) r = mul(r, p);
    return r;
}

// η / sinh η as a series in η²
Poly eta_over_sinh() {
    Poly s(kSeriesOrder + 1), inv(kSeriesOrder + 1, 0.0);
    double f = 1.0;
    for (int j = 0; j <= kSeriesOrder; ++j) {
        s[j] = 1.0 / f;
        f *= (2.0 * j + 2.0) * (2.0 * j + 3.0);
    }
    inv[0] = 1.0;
    for (int j = 1; j <= kSeriesOrder; ++j) {
        double acc = 0.0;
        for (int i = 1; i <= j; ++i) acc += s[i] * inv[j - i];
        inv[j] = -acc;
    }
    return inv;
}

Poly cosh_series() {
    Poly s(kSeriesOrder + 1);
    double f = 1.0;
    for (int j = 0; j <= kSeriesOrder; ++j) {
        s[j] = 1.0 / f;
        f *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
    }
    return s;
}

struct Expansion {
    std::vector<OperatorTerm> terms;
    // per term: η^{a−b}(η/sinh η)^b cosh^c η as series in η², times η^{a−b}
    std::vector<Poly> series;
    bool singular = false;  // some term has a < b
};

Expansion build(int m) {
    std::map<std::tuple<int, int, int, int>, double> cur{{{0, 0, 0, 0}, 1.0}};
    for (int it = 0; it < m; ++it) {
        std::map<std::tuple<int, int, int, int>, double> next;
        for (const auto& [key, coef] : cur) {
            const auto [k, a, b, c] = key;
            // ∂_η then multiply by −csch
            if (a > 0) next[{k, a - 1, b + 1, c}] -= a * coef;
            if (b > 0) next[{k, a, b + 2, c + 1}] += b * coef;
            if (c > 0) next[{k, a, b, c - 1}] -= c * coef;
            next[{k + 1, a + 1, b + 1, c}] += coef;
        }
        cur.clear();
        for (const auto& [key, coef] : next)
            if (coef != 0.0) cur.emplace(key, coef);
    }
    Expansion e;
    const Poly eos = eta_over_sinh(), ch = cosh_series();
    for (const auto& [key, coef] : cur) {
        const auto [k, a, b, c] = key;
        e.terms.push_back({coef, k, a, b, c});
        e.series.push_back(mul(power(eos, b), power(ch, c)));
        if (a < b) e.singular = true;
    }
    return e;
}

const Expansion& expansion(int m) {
    if (m < 0) throw std::invalid_argument("operator power must be >= 0");
    static std::mutex mu;
    static std::map<int, std::unique_ptr<const Expansion>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[m];
    if (!slot) slot = std::make_unique<const Expansion>(build(m));
    return *slot;
}

double apply_direct(const Expansion& e, double tau, double eta) {
    const double ltau = std::log(tau), leta = std::log(eta);
    const double lsc = special::log_sinhc(eta), lch = special::log_cosh(eta);
    const double gauss = -eta * eta / (2.0 * tau);
    double s = 0.0;
    for (const auto& t : e.terms) {
        // η^a csch^b = η^{a−b} (η / sinh η)^b
        const double l = -t.k * ltau + (t.a - t.b) * leta - t.b * lsc + t.c * lch + gauss;
        s += t.coef * std::exp(l);
    }
    return s;
}

double apply_series(const Expansion& e, double tau, double eta) {
    // Laurent coefficients in η; negative powers cancel identically.
    Poly gauss(kSeriesOrder + 1);
    double g = 1.0;
    for (int j = 0; j <= kSeriesOrder; ++j) {
        gauss[j] = g;
        g *= -1.0 / (2.0 * tau) / (j + 1);
    }
    std::map<int, double> coeffs;  // power of η → coefficient
    int lowest = 0;
    for (const auto& t : e.terms) lowest = std::min(lowest, t.a - t.b);
    for (std::size_t i = 0; i < e.terms.size(); ++i) {
        const auto& t = e.terms[i];
        const Poly p = mul(e.series[i], gauss);
        const double scale = t.coef * std::pow(tau, -t.k);
        for (int j = 0; j <= kSeriesOrder; ++j) coeffs[t.a - t.b + 2 * j] += scale * p[j];
    }
    double s = 0.0;
    for (const auto& [pw, c] : coeffs) {
        if (pw < 0) continue;
        if (pw > lowest + 2 * kSeriesOrder) break;
        s += c * std::pow(eta, pw);
    }
    return s;
}

}  // namespace

HeatKernelSpec::HeatKernelSpec(double tt, Dimension n) : t(tt), dim(n) {
    if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("heat kernel time must be > 0");
}

const std::vector<OperatorTerm>& radial_operator_terms(int m) { return expansion(m).terms; }

double radial_operator_apply(int m, double tau, double eta) {
    if (!(tau > 0.0)) throw std::invalid_argument("tau must be > 0");
    if (eta < 0.0) throw std::invalid_argument("eta must be >= 0");
    const Expansion& e = expansion(m);
    const double cut = 0.25 * std::min(1.0, std::sqrt(tau));
    if (eta == 0.0 || (e.singular && eta < cut)) return apply_series(e, tau, eta);
    return apply_direct(e, tau, eta);
}

double hk_fourier(double t, double lambda, Dimension n) {
    if (!(t > 0.0)) throw std::invalid_argument("t must be > 0");
    const double rho = n.rho();
    return std::exp(-(lambda * lambda + rho * rho) * t);
}

double hk_odd(double t, double eta, int m) {
    if (!(t > 0.0)) throw std::invalid_argument("t must be > 0");
    if (m < 1) throw std::invalid_argument("odd heat kernel needs m >= 1");
    const double tau = 2.0 * t;
    const double lpref = -m * m * tau / 2.0 - m * std::log(2.0 * kPi) - 0.5 * std::log(2.0 * kPi * tau);
    return std::exp(lpref) * radial_operator_apply(m, tau, eta);
}

double hk_even(double t, double eta, int m) {
    if (!(t > 0.0)) throw std::invalid_argument("t must be > 0");
    if (m < 1) throw std::invalid_argument("even heat kernel needs m >= 1");
    if (eta < 0.0) throw std::invalid_argument("eta must be >= 0");
    using boost::math::quadrature::gauss_kronrod;
    const double tau = 2.0 * t;
    const double lpref = -(m - 0.5) * (m - 0.5) * tau / 2.0 - m * std::log(2.0 * kPi) - 0.5 * std::log(kPi * tau);

    // u² = cosh s − cosh η; ds = 2u du / sinh s turns the integrand into 2 D^m E(s)
    const double base = 2.0 * std::sinh(0.5 * eta) * std::sinh(0.5 * eta);  // cosh η − 1
    auto s_of_u = [base](double u) {
        const double w = base + u * u;  // cosh s − 1
        return std::log1p(w + std::sqrt(w * (w + 2.0)));
    };
    const double s_max = eta + std::sqrt(2.0 * tau * std::log(1e18));
    const double delta = std::min(1.0, 0.5 * std::sqrt(tau));
    const double s1 = eta + delta;
    const double u1 = std::sqrt(std::cosh(s1) - std::cosh(eta));

    auto f_u = [&](double u) { return 2.0 * radial_operator_apply(m, tau, s_of_u(u)); };
    // beyond s1 integrate in s: D^m E(s) sinh s / u(s)
    auto f_s = [&](double s) {
        const double u = std::sqrt(std::cosh(s) - std::cosh(eta));
        return radial_operator_apply(m, tau, s) * std::sinh(s) / u;
    };
    double err = 0.0;
    const double a = gauss_kronrod<double, 31>::integrate(f_u, 0.0, u1, 15, 1e-13, &err);
    const double b = gauss_kronrod<double, 31>::integrate(f_s, s1, s_max, 15, 1e-13, &err);
    return std::exp(lpref) * (a + b);
}

double hk(double t, double eta, Dimension n) {
    return n.odd() ? hk_odd(t, eta, n.half()) : hk_even(t, eta, n.half());
}

double psi_clt(double t, double eta, Dimension n) { return hk(0.5 * t, eta, n); }

}  // namespace hyperwalk

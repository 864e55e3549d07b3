#include "hyperwalk/radial_density.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "hyperwalk/errors.hpp"
#include "hyperwalk/quadrature.hpp"
#include "hyperwalk/special.hpp"

namespace hyperwalk {

namespace {

constexpr int kOrder = 20;

struct CdfTable {
    std::vector<double> edges;  // cells [edges[i], edges[i+1])
    std::vector<double> cum;    // mass below edges[i]
    std::vector<double> pdf;    // pdf at edges[i]
    double total = 0.0;
};

}  // namespace

struct RadialProfile::Impl {
    RadialFn raw;
    double eta_max = 0.0;
    int n = 2;
    std::string description;
    ProfileOptions opt;
    double log_omega = 0.0;
    double norm_const = 1.0;
    double mass = 0.0;
    std::shared_ptr<const MeasureRule> base;

    mutable std::once_flag table_once;
    mutable CdfTable table;

    double pdf(double eta) const {
        if (!(eta > 0.0) || eta >= eta_max) return 0.0;
        const double g = raw(eta);
        if (g == 0.0) return 0.0;
        return norm_const * g * std::exp(log_omega + (n - 1) * special::log_sinh(eta));
    }

    double gl(double a, double b, int order) const {
        return quad::integrate_gl([this](double x) { return pdf(x); }, a, b, order);
    }

    MeasureRule build_rule(int panels) const {
        const auto c = quad::composite_gauss_legendre(0.0, eta_max, panels, kOrder);
        MeasureRule r;
        r.eta = c.x;
        r.w.resize(c.w.size());
        for (std::size_t i = 0; i < c.x.size(); ++i) r.w[i] = c.w[i] * pdf(c.x[i]);
        return r;
    }

    void refine(double a, double b, double pa, double pb, int depth, CdfTable& t) const {
        const double m = 0.5 * (a + b), h = b - a;
        const double left = gl(a, m, kOrder);
        const double right = gl(m, b, kOrder);
        const double whole = left + right;
        const double coarse = gl(a, b, 10);
        const double herm_mid = 0.5 * whole + h * (pa - pb) / 8.0;
        const bool resolved = std::abs(whole - coarse) <= 1e-15 && std::abs(herm_mid - left) <= 1e-14;
        if (!resolved && depth < 40 && h > 1e-9 * eta_max) {
            const double pm = pdf(m);
            refine(a, m, pa, pm, depth + 1, t);
            refine(m, b, pm, pb, depth + 1, t);
            return;
        }
        t.edges.push_back(a);
        t.pdf.push_back(pa);
        t.cum.push_back(t.total);
        t.total += whole;
    }

    const CdfTable& cdf_table() const {
        std::call_once(table_once, [this] {
            CdfTable t;
            const int cells = std::max(1, opt.initial_cells);
            double pa = pdf(0.0);
            for (int i = 0; i < cells; ++i) {
                const double a = eta_max * i / cells;
                const double b = eta_max * (i + 1) / cells;
                const double pb = pdf(b);
                refine(a, b, pa, pb, 0, t);
                pa = pb;
            }
            t.edges.push_back(eta_max);
            t.pdf.push_back(0.0);
            t.cum.push_back(t.total);
            if (!(t.total > 0.0)) throw NumericalError("radial profile has zero mass");
            table = std::move(t);
        });
        return table;
    }
};

RadialProfile RadialProfile::from_function(RadialFn raw, double eta_max, Dimension dim,
                                           std::string description, ProfileOptions opt) {
    if (!(eta_max > 0.0) || !std::isfinite(eta_max)) throw std::invalid_argument("eta_max must be finite and > 0");
    if (opt.base_panels < 1 || opt.initial_cells < 1) throw std::invalid_argument("profile grid sizes must be >= 1");
    auto impl = std::make_shared<Impl>();
    impl->raw = std::move(raw);
    impl->eta_max = eta_max;
    impl->n = dim.value();
    impl->description = std::move(description);
    impl->opt = opt;
    impl->log_omega = log_sphere_area(dim);

    auto base = std::make_shared<MeasureRule>(impl->build_rule(opt.base_panels));
    double mass = 0.0;
    for (std::size_t i = 0; i < base->w.size(); ++i) {
        if (!(base->w[i] >= 0.0) || !std::isfinite(base->w[i]))
            throw std::invalid_argument("radial profile must be finite and nonnegative");
        mass += base->w[i];
    }
    if (!(mass > 0.0)) throw std::invalid_argument("radial profile has zero mass");
    if (opt.normalize) {
        impl->norm_const = 1.0 / mass;
        for (double& w : base->w) w /= mass;
        impl->mass = 1.0;
    } else {
        impl->mass = mass;
    }
    impl->base = std::move(base);
    return RadialProfile(std::move(impl));
}

Dimension RadialProfile::dim() const { return Dimension(impl_->n); }
double RadialProfile::eta_max() const { return impl_->eta_max; }
double RadialProfile::norm_const() const { return impl_->norm_const; }
double RadialProfile::total_mass() const { return impl_->mass; }
const std::string& RadialProfile::description() const { return impl_->description; }
std::size_t RadialProfile::cdf_cells() const { return impl_->cdf_table().edges.size() - 1; }

double RadialProfile::density(double eta) const {
    if (eta < 0.0 || eta >= impl_->eta_max) return 0.0;
    return impl_->norm_const * impl_->raw(eta);
}

double RadialProfile::pdf(double eta) const { return impl_->pdf(eta); }

double RadialProfile::cdf(double eta) const {
    if (!(eta > 0.0)) return 0.0;
    if (eta >= impl_->eta_max) return 1.0;
    const CdfTable& t = impl_->cdf_table();
    const auto it = std::upper_bound(t.edges.begin(), t.edges.end(), eta);
    const std::size_t i = static_cast<std::size_t>(it - t.edges.begin()) - 1;
    const double part = t.cum[i] + impl_->gl(t.edges[i], eta, kOrder);
    return std::clamp(part / t.total, 0.0, 1.0);
}

double RadialProfile::cdf_interp(double eta) const {
    if (!(eta > 0.0)) return 0.0;
    if (eta >= impl_->eta_max) return 1.0;
    const CdfTable& t = impl_->cdf_table();
    const auto it = std::upper_bound(t.edges.begin(), t.edges.end(), eta);
    const std::size_t i = static_cast<std::size_t>(it - t.edges.begin()) - 1;
    const double h = t.edges[i + 1] - t.edges[i];
    const double s = (eta - t.edges[i]) / h, s2 = s * s, s3 = s2 * s;
    const double mass = t.cum[i + 1] - t.cum[i];
    const double part = (s3 - 2 * s2 + s) * h * t.pdf[i] + (-2 * s3 + 3 * s2) * mass + (s3 - s2) * h * t.pdf[i + 1];
    return std::clamp((t.cum[i] + part) / t.total, 0.0, 1.0);
}

double RadialProfile::quantile(double u) const {
    if (!(u > 0.0)) return 0.0;
    if (u >= 1.0) return impl_->eta_max;
    const CdfTable& t = impl_->cdf_table();
    const double target = u * t.total;
    auto it = std::upper_bound(t.cum.begin(), t.cum.end(), target);
    std::size_t i = static_cast<std::size_t>(it - t.cum.begin());
    i = std::clamp<std::size_t>(i, 1, t.edges.size() - 1) - 1;

    const double a = t.edges[i], h = t.edges[i + 1] - a;
    const double mass = t.cum[i + 1] - t.cum[i];
    const double ma = h * t.pdf[i], mb = h * t.pdf[i + 1];
    const double goal = target - t.cum[i];
    // cubic Hermite in s ∈ [0,1] through (0,0),(1,mass) with end slopes ma, mb
    auto H = [&](double s) {
        const double s2 = s * s, s3 = s2 * s;
        return (s3 - 2 * s2 + s) * ma + (-2 * s3 + 3 * s2) * mass + (s3 - s2) * mb;
    };
    auto dH = [&](double s) {
        const double s2 = s * s;
        return (3 * s2 - 4 * s + 1) * ma + (-6 * s2 + 6 * s) * mass + (3 * s2 - 2 * s) * mb;
    };
    double lo = 0.0, hi = 1.0;
    double s = mass > 0.0 ? std::clamp(goal / mass, 0.0, 1.0) : 0.5;
    const double tol = 1e-13 / std::max(h, 1e-300);
    for (int iter = 0; iter < 200; ++iter) {
        const double f = H(s) - goal;
        if (f == 0.0) return a + s * h;
        if (f < 0.0) lo = s; else hi = s;
        const double d = dH(s);
        double next = (d > 0.0) ? s - f / d : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - s) <= tol || (hi - lo) <= tol) return a + next * h;
        s = next;
    }
    throw NumericalError("quantile root finding did not converge");
}

std::shared_ptr<const MeasureRule> RadialProfile::rule(double frequency) const {
    const int want = static_cast<int>(std::ceil(std::abs(frequency) * impl_->eta_max / 2.0));
    if (want <= impl_->opt.base_panels) return impl_->base;
    return std::make_shared<const MeasureRule>(impl_->build_rule(want));
}

double RadialProfile::expect(const RadialFn& f, double frequency) const {
    const auto r = rule(frequency);
    double s = 0.0;
    for (std::size_t i = 0; i < r->eta.size(); ++i) s += r->w[i] * f(r->eta[i]);
    return s;
}

RadialProfile make_bump(double eta_max, Dimension dim) {
    if (!(eta_max > 0.0)) throw std::invalid_argument("bump eta_max must be > 0");
    std::ostringstream os;
    os << "bump:" << eta_max;
    const double inv = 1.0 / eta_max;
    return RadialProfile::from_function(
        [inv](double eta) {
            const double x = eta * inv;
            if (x >= 1.0) return 0.0;
            return std::exp(-1.0 / (1.0 - x * x));
        },
        eta_max, dim, os.str());
}

namespace {

// Fritsch–Carlson monotone cubic
struct Pchip {
    std::vector<double> x, y, d;

    Pchip(std::vector<double> xs, std::vector<double> ys) : x(std::move(xs)), y(std::move(ys)), d(x.size(), 0.0) {
        const std::size_t n = x.size();
        std::vector<double> h(n - 1), del(n - 1);
        for (std::size_t k = 0; k + 1 < n; ++k) {
            h[k] = x[k + 1] - x[k];
            del[k] = (y[k + 1] - y[k]) / h[k];
        }
        if (n == 2) {
            d[0] = d[1] = del[0];
            return;
        }
        for (std::size_t k = 1; k + 1 < n; ++k) {
            if (del[k - 1] * del[k] <= 0.0) continue;
            const double w1 = 2 * h[k] + h[k - 1], w2 = h[k] + 2 * h[k - 1];
            d[k] = (w1 + w2) / (w1 / del[k - 1] + w2 / del[k]);
        }
        auto end = [](double h0, double h1, double d0, double d1) {
            double v = ((2 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
            if (v * d0 <= 0.0) v = 0.0;
            else if (d0 * d1 <= 0.0 && std::abs(v) > std::abs(3 * d0)) v = 3 * d0;
            return v;
        };
        d[0] = end(h[0], h[1], del[0], del[1]);
        d[n - 1] = end(h[n - 2], h[n - 3], del[n - 2], del[n - 3]);
    }

    double operator()(double t) const {
        if (t <= x.front()) return y.front();
        if (t >= x.back()) return y.back();
        const auto it = std::upper_bound(x.begin(), x.end(), t);
        const std::size_t k = static_cast<std::size_t>(it - x.begin()) - 1;
        const double h = x[k + 1] - x[k], s = (t - x[k]) / h;
        const double s2 = s * s, s3 = s2 * s;
        return (2 * s3 - 3 * s2 + 1) * y[k] + (s3 - 2 * s2 + s) * h * d[k] + (-2 * s3 + 3 * s2) * y[k + 1] +
               (s3 - s2) * h * d[k + 1];
    }
};

}  // namespace

RadialProfile make_table(std::vector<double> etas, std::vector<double> values, Dimension dim) {
    if (etas.size() != values.size() || etas.size() < 2)
        throw std::invalid_argument("table needs matching etas/values with at least 2 entries");
    if (etas.front() != 0.0) throw std::invalid_argument("table etas must start at 0");
    for (std::size_t i = 0; i < etas.size(); ++i) {
        if (!std::isfinite(etas[i]) || !std::isfinite(values[i])) throw std::invalid_argument("table entries must be finite");
        if (values[i] < 0.0) throw std::invalid_argument("table values must be nonnegative");
        if (i > 0 && !(etas[i] > etas[i - 1])) throw std::invalid_argument("table etas must be strictly increasing");
    }
    const double eta_max = etas.back();
    std::ostringstream os;
    os << "table:" << etas.size();
    auto interp = std::make_shared<const Pchip>(std::move(etas), std::move(values));
    return RadialProfile::from_function([interp](double eta) { return std::max(0.0, (*interp)(eta)); }, eta_max,
                                        dim, os.str());
}

RadialProfile scale_profile(const RadialProfile& p, double eps) {
    if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("scale factor must lie in (0,1]");
    if (eps == 1.0) return p;
    const int n = p.dim().value();
    const double inv = 1.0 / eps;
    auto raw = [p, inv, n](double eta) {
        const double u = eta * inv;
        const double g = p.density(u);
        if (g == 0.0) return 0.0;
        if (eta == 0.0) return g * std::pow(inv, n);
        return g * inv * std::exp((n - 1) * (special::log_sinh(u) - special::log_sinh(eta)));
    };
    std::ostringstream os;
    os << p.description() << "@" << eps;
    ProfileOptions opt;
    opt.normalize = false;
    RadialProfile q = RadialProfile::from_function(raw, eps * p.eta_max(), p.dim(), os.str(), opt);
    if (std::abs(q.total_mass() - p.total_mass()) > 1e-8 * p.total_mass())
        throw NumericalError("scaled profile lost normalization");
    return q;
}

double pdf_eta(const RadialProfile& p, double eta) {
    if (eta < 0.0) throw std::invalid_argument("eta must be >= 0");
    return p.pdf(eta);
}

double cdf_eta(const RadialProfile& p, double eta) { return p.cdf(eta); }

double sample_eta(const RadialProfile& p, double u) {
    if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("sample_eta needs u in (0,1)");
    return p.quantile(u);
}

double uniform_open(RandomStream& rng) { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; }

void sample_direction(RandomStream& rng, std::span<double> out) {
    std::normal_distribution<double> normal;
    for (;;) {
        double s = 0.0;
        for (double& v : out) {
            v = normal(rng);
            s += v * v;
        }
        if (s > 1e-300) {
            const double inv = 1.0 / std::sqrt(s);
            for (double& v : out) v *= inv;
            return;
        }
    }
}

BallPoint sample_point(const RadialProfile& p, RandomStream& rng) {
    const double eta = p.quantile(uniform_open(rng));
    std::vector<double> x(p.dim().value());
    sample_direction(rng, x);
    const double r = radius_of_eta(eta);
    for (double& v : x) v *= r;
    return BallPoint(std::move(x));
}

double mean_eta(const RadialProfile& p) { return p.expect([](double e) { return e; }) / p.total_mass(); }

double second_moment(const RadialProfile& p) { return p.expect([](double e) { return e * e; }) / p.total_mass(); }

double limit_time(const RadialProfile& p) { return second_moment(p) / p.dim().value(); }

}  // namespace hyperwalk

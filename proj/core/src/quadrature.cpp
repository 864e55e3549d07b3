#include "hyperwalk/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace hyperwalk::quad {

namespace {

// Monic recurrence coefficient for the weight (1-u²)^a.
double beta(int k, double a) {
    if (k == 1 && std::abs(a + 0.5) < 1e-15) return 0.5;
    const double kk = k;
    const double s = 2.0 * kk + 2.0 * a;
    return kk * (kk + 2.0 * a) / (s * s - 1.0);
}

Rule build(int order, double a) {
    const double mu0 = std::exp((2.0 * a + 1.0) * std::log(2.0) + 2.0 * std::lgamma(a + 1.0) - std::lgamma(2.0 * a + 2.0));
    std::vector<double> sb(order + 1);
    for (int k = 1; k <= order; ++k) sb[k] = std::sqrt(beta(k, a));

    Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
    Eigen::VectorXd sub(order > 1 ? order - 1 : 0);
    for (int k = 1; k < order; ++k) sub[k - 1] = sb[k];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("Golub-Welsch eigenvalue solve failed");

    Rule r;
    r.nodes.resize(order);
    r.weights.resize(order);
    for (int i = 0; i < order; ++i) {
        double x = es.eigenvalues()[i];
        double sum = 0.0;
        for (int it = 0; it < 4; ++it) {
            // orthonormal recurrence: sb[k+1] p_{k+1} = x p_k - sb[k] p_{k-1}
            double p0 = 0.0, p1 = 1.0, d0 = 0.0, d1 = 0.0;
            sum = 1.0;
            for (int k = 0; k < order; ++k) {
                const double prev = k > 0 ? sb[k] : 0.0;
                const double p2 = (x * p1 - prev * p0) / sb[k + 1];
                const double d2 = (p1 + x * d1 - prev * d0) / sb[k + 1];
                p0 = p1; p1 = p2;
                d0 = d1; d1 = d2;
                if (k + 1 < order) sum += p1 * p1;
            }
            if (d1 == 0.0) break;
            const double dx = p1 / d1;
            x -= dx;
            if (std::abs(dx) < 1e-17) break;
        }
        // recompute the Christoffel sum at the refined node
        double p0 = 0.0, p1 = 1.0;
        sum = 1.0;
        for (int k = 0; k + 1 < order; ++k) {
            const double prev = k > 0 ? sb[k] : 0.0;
            const double p2 = (x * p1 - prev * p0) / sb[k + 1];
            p0 = p1; p1 = p2;
            sum += p1 * p1;
        }
        r.nodes[i] = x;
        r.weights[i] = mu0 / sum;
    }
    // symmetrize
    for (int i = 0; i < order / 2; ++i) {
        const int j = order - 1 - i;
        const double x = 0.5 * (r.nodes[j] - r.nodes[i]);
        const double w = 0.5 * (r.weights[i] + r.weights[j]);
        r.nodes[i] = -x; r.nodes[j] = x;
        r.weights[i] = w; r.weights[j] = w;
    }
    if (order % 2 == 1) r.nodes[order / 2] = 0.0;
    return r;
}

}  // namespace

std::shared_ptr<const Rule> gauss_gegenbauer(int order, double a) {
    if (order < 1) throw std::invalid_argument("quadrature order must be >= 1");
    if (!(a > -1.0)) throw std::invalid_argument("Gegenbauer exponent must exceed -1");
    static std::mutex mu;
    static std::map<std::pair<int, double>, std::shared_ptr<const Rule>> cache;
    const auto key = std::make_pair(order, a);
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    auto rule = std::make_shared<const Rule>(build(order, a));
    std::lock_guard lock(mu);
    return cache.emplace(key, std::move(rule)).first->second;
}

Composite composite_gauss_legendre(double lo, double hi, int panels, int order) {
    if (panels < 1) throw std::invalid_argument("need at least one panel");
    const auto rule = gauss_legendre(order);
    Composite c;
    c.x.reserve(static_cast<std::size_t>(panels) * order);
    c.w.reserve(c.x.capacity());
    const double width = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
        const double a = lo + p * width;
        const double mid = a + 0.5 * width, h = 0.5 * width;
        for (int i = 0; i < order; ++i) {
            c.x.push_back(mid + h * rule->nodes[i]);
            c.w.push_back(h * rule->weights[i]);
        }
    }
    return c;
}

}  // namespace hyperwalk::quad

#pragma once

#include <memory>
#include <vector>

namespace hyperwalk::quad {

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Nodes/weights for ∫_{-1}^{1} f(u) (1-u²)^a du, a > -1. Cached, thread safe.
std::shared_ptr<const Rule> gauss_gegenbauer(int order, double a);

inline std::shared_ptr<const Rule> gauss_legendre(int order) { return gauss_gegenbauer(order, 0.0); }

// Apply an order-n Gauss–Legendre rule on [lo, hi].
template <class F>
double integrate_gl(F&& f, double lo, double hi, int order) {
    const auto rule = gauss_legendre(order);
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    double s = 0.0;
    for (std::size_t i = 0; i < rule->nodes.size(); ++i) s += rule->weights[i] * f(c + h * rule->nodes[i]);
    return s * h;
}

// Composite rule: `panels` equal panels of order `order` on [lo, hi].
struct Composite {
    std::vector<double> x;
    std::vector<double> w;
};
Composite composite_gauss_legendre(double lo, double hi, int panels, int order);

}  // namespace hyperwalk::quad

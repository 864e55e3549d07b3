#pragma once

#include <vector>

#include "hyperwalk/geometry.hpp"

namespace hyperwalk {

struct HeatKernelSpec {
    HeatKernelSpec(double t, Dimension n);

    double t;
    Dimension dim;
    double rho() const { return dim.rho(); }
};

// One term coef · τ^{−k} · η^a · csch^b η · cosh^c η · e^{−η²/(2τ)}.
struct OperatorTerm {
    double coef;
    int k, a, b, c;
};

// Expansion of (−1/sinh η · ∂_η)^m e^{−η²/(2τ)}.
const std::vector<OperatorTerm>& radial_operator_terms(int m);
// Evaluate the expansion at (τ, η), removable limit included.
double radial_operator_apply(int m, double tau, double eta);

double hk_fourier(double t, double lambda, Dimension n);
double hk_odd(double t, double eta, int m);   // n = 2m+1
double hk_even(double t, double eta, int m);  // n = 2m
double hk(double t, double eta, Dimension n);
double psi_clt(double t, double eta, Dimension n);

}  // namespace hyperwalk

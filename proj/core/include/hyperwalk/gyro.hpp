#pragma once

#include <span>

#include "hyperwalk/geometry.hpp"

namespace hyperwalk {

BallPoint mobius_add(const BallPoint& x, const BallPoint& y);
BallPoint mobius_neg(const BallPoint& x);
BallPoint mobius_scalar(double gamma, const BallPoint& z);

// gyr[a,b]c = ⊖(a⊕b) ⊕ (a⊕(b⊕c))
BallPoint gyration(const BallPoint& a, const BallPoint& b, const BallPoint& c);

// T_a(x) = (−a) ⊕ x
BallPoint translate(const BallPoint& a, const BallPoint& x);
double translate_conformal_factor(const BallPoint& a, const BallPoint& x);

// a ⊕ (t ⊗ b), t in [0,1]
BallPoint geodesic_point(const BallPoint& a, const BallPoint& b, double t);

// s ⊕ (1/k) ⊗ (⊖s ⊕ z)
BallPoint sturm_step(const BallPoint& s_prev, const BallPoint& z, long long k);

// Allocation-free variants for inner loops. `out` may alias x or y.
// Each returns the squared norm of the result and throws DomainError past
// the boundary guard.
namespace kernel {

double mobius_add(std::span<const double> x, std::span<const double> y, std::span<double> out);
double mobius_scalar(double gamma, std::span<const double> z, std::span<double> out);

}  // namespace kernel

}  // namespace hyperwalk

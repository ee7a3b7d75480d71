#pragma once

#include "p3lab/precision.hpp"

namespace p3lab {

// Equilibrium measure of V(x) = x on [0, b]: psi(x) = (h / 2 pi) sqrt((b - x) / x) with constant h.
struct EquilibriumMeasure {
    Real b;
    Real h;
    Real ell;
    Precision prec;

    Real density(const Real& x) const;
    // c_1 = b h(0)^2
    Real c1() const { return b * h * h; }
};

EquilibriumMeasure laguerre_equilibrium(Precision prec = {});

// int_0^b x^m psi(x) dx
Real equilibrium_moment(const EquilibriumMeasure& mu, int m);

// int_0^b log|x - y| psi(y) dy for real x.
Real log_potential(const EquilibriumMeasure& mu, const Real& x);

// 2 int log|x - y| psi(y) dy - x - ell
Real variational_residual(const EquilibriumMeasure& mu, const Real& x);

// int log(z - x) psi(x) dx, principal log; z off (-inf, b].
Complex g_eq(const EquilibriumMeasure& mu, const Complex& z);

// -1/2 int_b^z h R(s) ds with R = ((s - b)/s)^{1/2}; z off (-inf, b].
Complex xi_eq(const EquilibriumMeasure& mu, const Complex& z);
// Boundary value of xi on the real axis from above (+) or below (-).
Complex xi_eq_boundary(const EquilibriumMeasure& mu, const Real& x, bool above);

struct ConformalMap {
    Complex value;
    Real fprime0;
    Real c1;
    Real radius;
};

// f(z) = (1/4) (int_0^z h R)^2 = -z (h int_0^1 sqrt(b - z t^2) dt)^2 for |z| < radius.
ConformalMap conformal_f(const EquilibriumMeasure& mu, const Complex& z);

}  // namespace p3lab

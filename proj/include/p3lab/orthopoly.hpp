#pragma once

#include "p3lab/precision.hpp"

#include <vector>

namespace p3lab {

// pLUE:   x^alpha exp(-n (x + (t/x)^k)) on (0, inf)
// pGUE:   |x|^{2 alpha} exp(-(n/2) (x^2 + (t/x^2)^k)) on R
// pLUE_scaled: x^alpha exp(-n (t x + x^{-k})) on (0, inf), the t-rescaled pLUE weight.
enum class Ensemble { pLUE, pGUE, pLUE_scaled };

struct PerturbedWeight {
    Ensemble ensemble = Ensemble::pLUE;
    int n = 1;
    int k = 1;
    Real alpha = 0;
    Real t = 0;
    Precision prec;

    void validate() const;
};

template <class Scalar>
Scalar log_weight(const PerturbedWeight& w, const Scalar& x);

// Working precision for a degree-m system.
int default_op_precision(int m);

// x^alpha exp(-A x - B x^{-k}) on (0, inf).
struct MomentShape {
    Real A;
    Real B;
    int k = 1;
    Real alpha;
};

// mu_0..mu_{count-1} of the shape by trapezoidal quadrature in u = log x.
std::vector<Real> shape_moments(const MomentShape& s, int count, int digits);

Real moment(const PerturbedWeight& w, int m);
std::vector<Real> moments(const PerturbedWeight& w, int count);

template <class Scalar>
struct OPSystem {
    PerturbedWeight weight;
    int degree = 0;
    std::vector<Scalar> moments;  // mu_0..mu_{2m+2}; empty for discretized systems
    std::vector<Scalar> hankel;   // D_0..D_{m+1}
    std::vector<Scalar> h;        // h_0..h_m
    std::vector<Scalar> log_h;
    std::vector<Scalar> a;  // a_0..a_m
    std::vector<Scalar> b;  // b_0..b_m, b_0 = 0
    // Monomial coefficients of p_0..p_{m+1}, low order first; Hankel systems only.
    std::vector<std::vector<Scalar>> coeffs;
};

// Hankel elimination at w.prec digits, validated against a rebuild at w.prec + 20.
OPSystem<Real> build_op_system(const PerturbedWeight& w, int m);

// Same system from moments already in hand (no stability rebuild).
OPSystem<Real> op_system_from_moments(const PerturbedWeight& w, const std::vector<Real>& mu, int m);

// Lanczos on a trapezoidal discretization of the weight; for large degree.
template <class Scalar>
OPSystem<Scalar> discretized_op_system(const PerturbedWeight& w, int m);

// Monic p_j(x).
template <class Scalar>
Scalar op_eval(const OPSystem<Scalar>& sys, int j, const Scalar& x);

// Christoffel-Darboux kernel of the first n orthonormal functions; requires n <= degree.
template <class Scalar>
Scalar cd_kernel(const OPSystem<Scalar>& sys, int n, const Scalar& x, const Scalar& y);

// log Z_n = sum_{j<n} log h_j. The 1/n! of the n-fold integral is not included.
template <class Scalar>
Scalar log_partition(const OPSystem<Scalar>& sys, int n);

Real partition(const PerturbedWeight& w, int n);

struct GueLueResiduals {
    Real even;
    Real odd;
};

// Residuals of the pGUE <-> pLUE partition function identities at sizes 2n and 2n+1.
GueLueResiduals pgue_plue_residual(int n, int k, const Real& alpha, const Real& t, Precision prec);

struct DiffIdentityResiduals {
    Real kernel_form;
    Real residue_form;
    // d/dt log Z~ at the base step and at half of it.
    Real derivative;
    Real derivative_half_step;
};

// Checks d/dt log Z~ = -n int x K~_n(x,x) dx and
// d/dt log Z = (n^2 + alpha n)/t + (n / 2t) Tr(Y_1 sigma_3) for the pLUE weight (w.n, w.k, w.alpha, w.t).
DiffIdentityResiduals diff_identity_residual(const PerturbedWeight& w, int n);

}  // namespace p3lab

#pragma once

#include "p3lab/grid.hpp"

#include <complex>
#include <vector>

namespace p3lab {

struct HierarchyConstants {
    int k = 1;
    double alpha = 0;
    std::vector<double> tau;   // tau_0..tau_k
    double z0 = -1;
    std::vector<double> beta;  // beta_0..beta_{k-2}
    double g1 = 0;
    double g2 = 0;
    double eta = 0;
    double c2 = 0;

    // beta_j, zero outside 0..k-2.
    double beta_at(int j) const;
};

HierarchyConstants hierarchy_constants(int k, double alpha);

// (2j+1)!! / (2^j j!)
double double_factorial_ratio(int j);

// (z - z0)^{3/2} p_{k-1}(z) z^{-k}, cut along (-inf, z0].
std::complex<double> g_stationary(std::complex<double> z, int k);

using GridFn = GridFunction<double>;

// l_{j+1} with l_{j+1}' = l_j''' + 4 u l_j' + 2 u' l_j and l_{j+1}(s_left) = c.
GridFn lenard_step(const GridFn& lj, const GridFn& u, double c);

// u = -((l_k^2)'' - 3 (l_k')^2 + tau0) / (4 l_k^2)
GridFn u_from_lk(const GridFn& lk, double tau0);

// Residuals of the p = 0..k equations of the hierarchy. `ell` holds l_1..l_k.
std::vector<GridFn> system_residual(int k, const std::vector<GridFn>& ell, const GridFn& u,
                                    const HierarchyConstants& consts);

// Right side minus left side of l'' = (l')^2/l - l'/s - l^2/s - tau0/l + tau1/s.
GridFn piii_residual_k1(const GridFn& l1, double tau0, double tau1);

// Solution of that equation with l(s[0]) = l_start, l'(s[0]) = dl_start, sampled on s
// (dopri5 dense output, tolerance 1e-14). Throws SingularityError if it blows up on the grid.
GridFn piii_reference_k1(const Eigen::VectorXd& s, double tau0, double tau1, double l_start, double dl_start,
                         int stencil = 9);

// End-to-end k = 1 chain on a reference PIII solution; every member except l1 and u is a residual.
struct HierarchyCheckK1 {
    GridFn l1;
    GridFn u;
    GridFn piii;
    GridFn system0;
    GridFn system1;
    GridFn lenard_l1;  // lenard_step(s/2, u, l1(s0)) - l1
    GridFn lenard_l2;  // lenard_step(l1, u, 0)
};

HierarchyCheckK1 hierarchy_check_k1(double alpha, const Eigen::VectorXd& s, int stencil = 9, double l_start = -4,
                                    double dl_start = 0);

// 4 (4z)^{-(k+1)} sum_j l_{k-j}(s) (4z)^j with l_0 = s/2; `ell` holds l_1..l_k at s.
std::complex<double> b_poly(std::complex<double> z, double s, const std::vector<double>& ell);

// b sampled on an s-grid at fixed z.
GridFunction<std::complex<double>> b_grid(std::complex<double> z, const std::vector<GridFn>& ell);

// d/ds c - 1 - 2 (z - u) a with a = -b'/2 and c = (z - u) b - b''/2.
GridFunction<std::complex<double>> lax_compat_residual(const GridFunction<std::complex<double>>& b,
                                                       const GridFn& u, std::complex<double> z);

}  // namespace p3lab

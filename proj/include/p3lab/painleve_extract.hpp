#pragma once

#include "p3lab/hierarchy.hpp"
#include "p3lab/precision.hpp"

#include <string>
#include <vector>

namespace p3lab {

// s = 2^{-1/k} C n^{(2k+1)/k} t with C = c1 (with_c1) or C = 1 (without_c1).
enum class ScalingMode { with_c1, without_c1 };

std::string to_string(ScalingMode m);
ScalingMode parse_scaling_mode(const std::string& s);

// c1 = -f'(0) for the Laguerre equilibrium measure, computed once at 40 digits.
double laguerre_c1();

Real s_to_t(int n, int k, const Real& s, ScalingMode mode, const Real& c1);
Real t_to_s(int n, int k, const Real& t, ScalingMode mode, const Real& c1);

// (1 - 4 alpha^2) / 8
double r_initial(double alpha);

struct ExtractOptions {
    ScalingMode mode = ScalingMode::with_c1;
    // Local least-squares polynomial in log s used for r'(s).
    int stencil = 7;
    int fit_degree = 3;
    Precision prec{40};
};

// Deviation r(s) - r(0) = -2 s d/ds log Z_n(t(s)) at each s, using the exact finite-n
// identity t d/dt log Z_n = n(n + alpha) - n sum_{j<n} a_j(t).
std::vector<double> extract_deviation(int k, double alpha, const std::vector<double>& s, int n,
                                      const ExtractOptions& opt = {});

// r(0) + deviation.
std::vector<double> extract_r(int k, double alpha, const std::vector<double>& s, int n,
                              const ExtractOptions& opt = {});

struct TranscendentTable {
    int k = 1;
    double alpha = 0;
    ScalingMode mode = ScalingMode::with_c1;
    double c1 = 1;
    int stencil = 7;
    int fit_degree = 3;
    std::vector<double> s;
    std::vector<int> n_used;
    std::vector<std::vector<double>> t;  // t[i][j]: n_used[i] at s[j]
    std::vector<std::vector<double>> r;
    std::vector<std::vector<double>> deviation;
    // Richardson in 1/n over the two largest n; the largest-n column if only one n.
    std::vector<double> r_extrapolated;
    // y and l_1 (identical functions) at sigma = sqrt(s), from r_extrapolated.
    std::vector<double> sigma;
    std::vector<double> y;
    std::vector<double> ell1;
};

TranscendentTable extract_table(int k, double alpha, const std::vector<double>& s,
                                const std::vector<int>& n_list, const ExtractOptions& opt = {});

// Log-spaced grid from lo to hi with the given points per decade (endpoints included).
std::vector<double> log_grid(double lo, double hi, int per_decade);

// y(sigma) = -2 d/dsigma r(sigma^2) at sigma = sqrt(s_i). Throws DomainError when the grid is
// coarser than 12 points per decade.
std::vector<double> y_from_r(const std::vector<double>& s, const std::vector<double>& r, int stencil = 7,
                             int fit_degree = 3);
std::vector<double> y_from_r(const TranscendentTable& table);

// r_extrapolated when column < 0, else r of n_used[column].
const std::vector<double>& r_column(const TranscendentTable& table, int column);

struct LargeSFit {
    double exponent = 0;
    double coefficient = 0;
    double expected_exponent = 0;
    double expected_coefficient = 0;
    int points = 0;
};

// Least-squares fit of log|y| against log sigma over [lo, hi].
LargeSFit verify_large_s(const TranscendentTable& table, double lo = 20, double hi = 200, int column = -1);

// Residual of the k = 1 PIII equation for l_1(sigma) = -4 sigma r'(sigma^2), on the sigma grid.
GridFn piii_residual_extracted(const TranscendentTable& table, int column = -1, int stencil = 9);

}  // namespace p3lab

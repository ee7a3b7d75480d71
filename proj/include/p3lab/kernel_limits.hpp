#pragma once

#include "p3lab/orthopoly.hpp"
#include "p3lab/painleve_extract.hpp"

#include <Eigen/Core>

#include <string>
#include <vector>

namespace p3lab {

enum class KernelMode { finite_n, bessel, airy };

std::string to_string(KernelMode m);
KernelMode parse_kernel_mode(const std::string& s);

// (1/(c1 n^2)) K_n(-u/(c1 n^2), -v/(c1 n^2); t(s)) for u, v < 0, on the pLUE weight.
// The orthogonal polynomial system is built once per (n, k, alpha, s).
class RescaledKernel {
public:
    RescaledKernel(int n, int k, double alpha, double s, ScalingMode mode = ScalingMode::with_c1);

    double operator()(double u, double v) const;

    int n() const { return n_; }
    double t() const { return t_; }
    double c1() const { return c1_; }
    // Scale factor: x = -u / scale.
    double scale() const { return scale_; }

private:
    int n_;
    double t_;
    double c1_;
    double scale_;
    OPSystem<long double> sys_;
};

double rescaled_kernel(int n, int k, double alpha, double s, double u, double v,
                       ScalingMode mode = ScalingMode::with_c1);

double c2_constant(int k);

struct KernelSample {
    KernelMode mode = KernelMode::finite_n;
    int n = 0;
    int k = 1;
    double alpha = 0;
    double s = 0;
    double t = 0;  // finite_n and airy samples: the t used
    std::vector<double> u;
    std::vector<double> v;
    Eigen::MatrixXd values;  // values(i, j) at (u[i], v[j])
    double c1 = 0;
    double eta = 0;
    double z0 = 0;
    double c2 = 0;
};

// finite_n: rescaled kernel; bessel: J_alpha(-u,-v); airy: A(u,v). For finite_n, u and v must be negative.
KernelSample sample_kernel(KernelMode mode, int n, int k, double alpha, double s, const std::vector<double>& u,
                           const std::vector<double>& v, ScalingMode scaling = ScalingMode::with_c1);

struct LimitResidual {
    double sup = 0;        // sup over the grid of |finite-n - limit|
    double max_limit = 0;  // sup of |limit| over the grid
    int n = 0;
};

// grid: u-values (< 0) used for both arguments. Requires s_small <= 1e-2.
LimitResidual bessel_limit_residual(int n, int k, double alpha, double s_small, const std::vector<double>& grid,
                                    ScalingMode mode = ScalingMode::with_c1);

// Default n for the Airy limit at s: ceil(32 sqrt(s)).
int airy_default_n(double s);

// grid: Airy variables for both arguments. Requires s_large >= 100 and rescaled arguments inside
// the hard-edge window (negative, with |x| <= 0.1 in the unscaled variable).
LimitResidual airy_limit_residual(int n, int k, double alpha, double s_large, const std::vector<double>& grid,
                                  ScalingMode mode = ScalingMode::with_c1);

}  // namespace p3lab

#include "p3lab/kernel_limits.hpp"

#include "p3lab/hierarchy.hpp"
#include "p3lab/specfun.hpp"

#include <cmath>

namespace p3lab {

namespace {

const Precision kLimitPrec{30};

double bessel_limit(double alpha, double u, double v) {
    PrecisionGuard g(kLimitPrec.decimal_digits);
    return static_cast<double>(bessel_kernel(Real(alpha), Real(-u), Real(-v), kLimitPrec));
}

double airy_limit(double u, double v) {
    PrecisionGuard g(kLimitPrec.decimal_digits);
    return static_cast<double>(airy_kernel(Real(u), Real(v), kLimitPrec));
}

}  // namespace

std::string to_string(KernelMode m) {
    switch (m) {
        case KernelMode::finite_n: return "finite-n";
        case KernelMode::bessel: return "bessel";
        case KernelMode::airy: return "airy";
    }
    return "";
}

KernelMode parse_kernel_mode(const std::string& s) {
    if (s == "finite-n" || s == "finite_n") return KernelMode::finite_n;
    if (s == "bessel") return KernelMode::bessel;
    if (s == "airy") return KernelMode::airy;
    throw DomainError("unknown kernel mode '" + s + "'");
}

RescaledKernel::RescaledKernel(int n, int k, double alpha, double s, ScalingMode mode) : n_(n) {
    if (!(s > 0)) throw DomainError("RescaledKernel: s must be positive");
    const Precision prec{40};
    PrecisionGuard g(prec.decimal_digits);
    c1_ = laguerre_c1();
    const Real t = s_to_t(n, k, Real(s), mode, Real(c1_));
    t_ = static_cast<double>(t);
    scale_ = c1_ * n * static_cast<double>(n);
    sys_ = discretized_op_system<long double>(PerturbedWeight{Ensemble::pLUE, n, k, Real(alpha), t, prec}, n);
}

double RescaledKernel::operator()(double u, double v) const {
    if (!(u < 0 && v < 0)) throw DomainError("rescaled kernel requires u, v < 0");
    const long double x = -u / static_cast<long double>(scale_), y = -v / static_cast<long double>(scale_);
    return static_cast<double>(cd_kernel(sys_, n_, x, y) / scale_);
}

double rescaled_kernel(int n, int k, double alpha, double s, double u, double v, ScalingMode mode) {
    return RescaledKernel(n, k, alpha, s, mode)(u, v);
}

double c2_constant(int k) { return hierarchy_constants(k, 0).c2; }

KernelSample sample_kernel(KernelMode mode, int n, int k, double alpha, double s, const std::vector<double>& u,
                           const std::vector<double>& v, ScalingMode scaling) {
    KernelSample out;
    out.mode = mode;
    out.n = n;
    out.k = k;
    out.alpha = alpha;
    out.s = s;
    out.u = u;
    out.v = v;
    out.values.resize(u.size(), v.size());
    const HierarchyConstants hc = hierarchy_constants(k, alpha);
    out.eta = hc.eta;
    out.z0 = hc.z0;
    out.c2 = hc.c2;
    out.c1 = laguerre_c1();
    if (mode == KernelMode::finite_n) {
        RescaledKernel K(n, k, alpha, s, scaling);
        out.t = K.t();
        out.c1 = K.c1();
        for (size_t i = 0; i < u.size(); ++i)
            for (size_t j = 0; j < v.size(); ++j) out.values(i, j) = K(u[i], v[j]);
    } else {
        for (size_t i = 0; i < u.size(); ++i)
            for (size_t j = 0; j < v.size(); ++j) {
                if (mode == KernelMode::bessel && !(u[i] < 0 && v[j] < 0))
                    throw DomainError("bessel sample requires u, v < 0");
                out.values(i, j) = mode == KernelMode::bessel ? bessel_limit(alpha, u[i], v[j]) : airy_limit(u[i], v[j]);
            }
    }
    return out;
}

LimitResidual bessel_limit_residual(int n, int k, double alpha, double s_small, const std::vector<double>& grid,
                                    ScalingMode mode) {
    if (!(s_small > 0 && s_small <= 1e-2)) throw DomainError("bessel_limit_residual: need 0 < s <= 1e-2");
    RescaledKernel K(n, k, alpha, s_small, mode);
    LimitResidual r;
    r.n = n;
    for (double u : grid)
        for (double v : grid) {
            const double J = bessel_limit(alpha, u, v);
            r.sup = std::max(r.sup, std::abs(K(u, v) - J));
            r.max_limit = std::max(r.max_limit, std::abs(J));
        }
    return r;
}

int airy_default_n(double s) { return static_cast<int>(std::ceil(32 * std::sqrt(s))); }

LimitResidual airy_limit_residual(int n, int k, double alpha, double s_large, const std::vector<double>& grid,
                                  ScalingMode mode) {
    if (!(s_large >= 100)) throw DomainError("airy_limit_residual: need s >= 100");
    const HierarchyConstants hc = hierarchy_constants(k, alpha);
    const double se = std::pow(s_large, hc.eta);
    const double shift = std::pow(s_large, -hc.eta / 3) / hc.c2;
    RescaledKernel K(n, k, alpha, s_large, mode);
    std::vector<double> U;
    for (double u : grid) {
        const double a = se * (hc.z0 + shift * u);
        if (!(a < 0)) throw DomainError("airy_limit_residual: rescaled argument is not negative");
        if (-a / K.scale() > 0.1) throw DomainError("airy_limit_residual: argument outside the hard-edge window");
        U.push_back(a);
    }
    const double pref = std::pow(s_large, 2 * hc.eta / 3) / hc.c2;
    LimitResidual r;
    r.n = n;
    for (size_t i = 0; i < grid.size(); ++i)
        for (size_t j = 0; j < grid.size(); ++j) {
            const double A = airy_limit(grid[i], grid[j]);
            // dU = s^{eta} s^{-eta/3} du / c2 = pref du, so the rescaled density is pref * K.
            r.sup = std::max(r.sup, std::abs(pref * K(U[i], U[j]) - A));
            r.max_limit = std::max(r.max_limit, std::abs(A));
        }
    return r;
}

}  // namespace p3lab

#include "p3lab/orthopoly.hpp"

#include <Eigen/Core>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace p3lab {

namespace {

template <class S>
S to_scalar(const Real& r) {
    if constexpr (std::is_same_v<S, Real>) return promote(r);
    else return r.template convert_to<S>();
}

// phi(u) = c u - exp(lA + q u) - exp(lB - q k u): log of the integrand in u = log x.
struct LogIntegrand {
    double c, lA, lB, q;
    int k;

    double operator()(double u) const {
        double v = c * u - std::exp(lA + q * u);
        if (std::isfinite(lB)) v -= std::exp(lB - q * k * u);
        return v;
    }
    double slope(double u) const {
        double v = c - q * std::exp(lA + q * u);
        if (std::isfinite(lB)) v += q * k * std::exp(lB - q * k * u);
        return v;
    }
};

double peak(const LogIntegrand& f) {
    double lo = -1, hi = 1;
    while (f.slope(lo) <= 0) lo *= 2;
    while (f.slope(hi) >= 0) hi *= 2;
    for (int it = 0; it < 200; ++it) {
        double m = (lo + hi) / 2;
        (f.slope(m) > 0 ? lo : hi) = m;
    }
    return (lo + hi) / 2;
}

// Point beyond which phi stays below phi(peak) - drop, searching in direction dir.
double cutoff(const LogIntegrand& f, double drop, int dir) {
    const double u0 = peak(f);
    const double target = f(u0) - drop;
    double step = 1;
    while (f(u0 + dir * step) > target) step *= 2;
    double lo = 0, hi = step;
    for (int it = 0; it < 200; ++it) {
        double m = (lo + hi) / 2;
        (f(u0 + dir * m) > target ? lo : hi) = m;
    }
    return u0 + dir * hi;
}

double log_or_ninf(const Real& x) {
    return x > 0 ? static_cast<double>(log(x)) : -std::numeric_limits<double>::infinity();
}

MomentShape shape_of(const PerturbedWeight& w) {
    const Real n(w.n), t = promote(w.t), a = promote(w.alpha);
    switch (w.ensemble) {
        case Ensemble::pLUE: return {n, n * pow(t, w.k), w.k, a};
        case Ensemble::pLUE_scaled: return {n * t, n, w.k, a};
        case Ensemble::pGUE: break;
    }
    // even pGUE moments in x = u^2
    return {n / 2, n / 2 * pow(t, w.k), w.k, a - Real(1) / 2};
}

OPSystem<Real> hankel_system(const PerturbedWeight& w, int m, int digits) {
    PerturbedWeight v = w;
    v.prec.decimal_digits = digits;
    std::vector<Real> mu = moments(v, 2 * m + 3);
    PrecisionGuard g(digits);
    return op_system_from_moments(w, mu, m);
}

template <class S>
void rescale(S& scale, std::initializer_list<S*> vals, const S& by) {
    using std::log;
    for (S* v : vals) *v /= by;
    scale += log(by);
}

// Orthonormal phi_{n-1}, phi_n and their derivatives at x, carried with a common log scale.
template <class S>
struct OrthoState {
    S prev, cur, dprev, dcur, log_scale;
};

template <class S>
OrthoState<S> orthonormal_at(const OPSystem<S>& sys, int n, const S& x) {
    using std::abs;
    using std::log;
    using std::sqrt;
    S pm(0), pc(1), dpm(0), dpc(0);
    S scale = -sys.log_h[0] / 2;
    const S big(1e64);
    for (int j = 0; j < n; ++j) {
        S sb = sqrt(sys.b[j + 1]);
        S sa = j > 0 ? sqrt(sys.b[j]) : S(0);
        S pn = ((x - sys.a[j]) * pc - sa * pm) / sb;
        S dpn = ((x - sys.a[j]) * dpc + pc - sa * dpm) / sb;
        pm = pc;
        pc = pn;
        dpm = dpc;
        dpc = dpn;
        S m = std::max({abs(pc), abs(pm), abs(dpc), abs(dpm)});
        if (m > big) rescale(scale, {&pm, &pc, &dpm, &dpc}, m);
    }
    return {pm, pc, dpm, dpc, scale};
}

}  // namespace

void PerturbedWeight::validate() const {
    if (n < 1) throw DomainError("PerturbedWeight: n must be positive");
    if (k < 1) throw DomainError("PerturbedWeight: k must be positive");
    if (t < 0) throw DomainError("PerturbedWeight: t must be non-negative");
    if (ensemble == Ensemble::pGUE && !(alpha > Real(-1) / 2))
        throw DomainError("PerturbedWeight: pGUE needs alpha > -1/2");
    if (ensemble != Ensemble::pGUE && !(alpha > -1)) throw DomainError("PerturbedWeight: pLUE needs alpha > -1");
    if (ensemble == Ensemble::pLUE_scaled && !(t > 0)) throw DomainError("PerturbedWeight: scaled weight needs t > 0");
}

int default_op_precision(int m) { return std::max(60, 12 + 6 * m); }

template <class S>
S log_weight(const PerturbedWeight& w, const S& x) {
    using std::log;
    using std::pow;
    const S ninf = -std::numeric_limits<S>::infinity();
    const S n(w.n), a = to_scalar<S>(w.alpha), t = to_scalar<S>(w.t);
    switch (w.ensemble) {
        case Ensemble::pLUE:
            if (!(x > 0)) return ninf;
            return a * log(x) - n * (x + pow(t / x, w.k));
        case Ensemble::pLUE_scaled:
            if (!(x > 0)) return ninf;
            return a * log(x) - n * (t * x + pow(x, -w.k));
        case Ensemble::pGUE: break;
    }
    S x2 = x * x;
    if (x2 == 0) {
        if (t > 0 || a > 0) return ninf;
        if (a == 0) return S(0);
        return std::numeric_limits<S>::infinity();
    }
    return a * log(x2) - n / 2 * (x2 + pow(t / x2, w.k));
}

std::vector<Real> shape_moments(const MomentShape& s, int count, int digits) {
    PrecisionGuard g(digits + 10);
    const Real A = promote(s.A), B = promote(s.B), alpha = promote(s.alpha);
    std::vector<Real> mu(count);
    if (B == 0) {
        for (int m = 0; m < count; ++m) {
            Real nu = alpha + m + 1;
            mu[m] = boost::math::tgamma(nu) / pow(A, nu);
        }
        return mu;
    }

    const double drop = (digits + 15) * std::log(10.0);
    const double c0 = static_cast<double>(alpha) + 1;
    LogIntegrand lo{c0, log_or_ninf(A), log_or_ninf(B), 1, s.k};
    LogIntegrand hi = lo;
    hi.c = c0 + count - 1;
    const double uL = cutoff(lo, drop, -1), uR = cutoff(hi, drop, +1);

    // Nodes uL + j h0 / 2^level, generated in Real so refinements nest exactly.
    const double h0 = std::min(0.5 / s.k, (uR - uL) / 16);
    const int base_nodes = static_cast<int>(std::ceil((uR - uL) / h0)) + 1;
    const Real uL_r(uL), h0_r(h0);
    auto eval = [&](const Real& start, const Real& step, int nodes, std::vector<Real>& acc) {
        for (int i = 0; i < nodes; ++i) {
            Real u = start + step * i;
            Real x = exp(u);
            Real base = exp((alpha + 1) * u - A * x - B * exp(-s.k * u));
            for (int m = 0; m < count; ++m) {
                acc[m] += base;
                base *= x;
            }
        }
    };

    Real h = h0_r;
    int nodes = base_nodes;
    std::vector<Real> sum(count, Real(0));
    eval(uL_r, h, nodes, sum);
    std::vector<Real> prev(count);
    for (int m = 0; m < count; ++m) prev[m] = sum[m] * h;

    const Real tol = pow(Real(10), -(digits / 2 + 3));
    for (int level = 1; level <= 22; ++level) {
        eval(uL_r + h / 2, h, nodes - 1, sum);
        h /= 2;
        nodes = 2 * nodes - 1;
        Real worst = 0;
        for (int m = 0; m < count; ++m) {
            mu[m] = sum[m] * h;
            Real r = abs(mu[m] / prev[m] - 1);
            if (r > worst) worst = r;
        }
        if (level >= 3 && worst < tol) return mu;
        prev = mu;
    }
    throw PrecisionError("shape_moments: trapezoidal quadrature did not converge");
}

std::vector<Real> moments(const PerturbedWeight& w, int count) {
    w.validate();
    const int digits = w.prec.decimal_digits;
    PrecisionGuard g(digits);
    const MomentShape s = shape_of(w);
    if (w.ensemble != Ensemble::pGUE) return shape_moments(s, count, digits);
    std::vector<Real> even = shape_moments(s, (count + 1) / 2, digits);
    std::vector<Real> mu(count, Real(0));
    for (int m = 0; m < count; m += 2) mu[m] = even[m / 2];
    return mu;
}

Real moment(const PerturbedWeight& w, int m) { return moments(w, m + 1)[m]; }

OPSystem<Real> op_system_from_moments(const PerturbedWeight& w, const std::vector<Real>& mu_in, int m) {
    const int M = m + 2;
    if (static_cast<int>(mu_in.size()) < 2 * M - 1)
        throw DomainError("op_system_from_moments: need moments up to mu_{2m+2}");
    std::vector<Real> mu(2 * M - 1);
    for (int i = 0; i < 2 * M - 1; ++i) mu[i] = promote(mu_in[i]);

    // H = L D L^T without pivoting, so D_j is the leading principal minor ratio.
    std::vector<std::vector<Real>> L(M, std::vector<Real>(M, Real(0)));
    std::vector<Real> dg(M);
    for (int i = 0; i < M; ++i) {
        for (int j = 0; j < i; ++j) {
            Real v = mu[i + j];
            for (int l = 0; l < j; ++l) v -= L[i][l] * L[j][l] * dg[l];
            L[i][j] = v / dg[j];
        }
        Real v = mu[2 * i];
        for (int l = 0; l < i; ++l) v -= L[i][l] * L[i][l] * dg[l];
        if (!(v > 0))
            throw PrecisionError("op_system_from_moments: non-positive pivot at j = " + std::to_string(i) +
                                 "; precision exhausted");
        dg[i] = v;
        L[i][i] = 1;
    }
    std::vector<std::vector<Real>> C(M, std::vector<Real>(M, Real(0)));
    for (int i = 0; i < M; ++i) {
        C[i][i] = 1;
        for (int j = 0; j < i; ++j) {
            Real v = 0;
            for (int l = j; l < i; ++l) v -= L[i][l] * C[l][j];
            C[i][j] = v;
        }
    }

    OPSystem<Real> s;
    s.weight = w;
    s.degree = m;
    s.moments = mu;
    s.hankel.push_back(Real(1));
    for (int j = 0; j <= m; ++j) {
        s.h.push_back(dg[j]);
        s.log_h.push_back(log(dg[j]));
        s.hankel.push_back(s.hankel.back() * dg[j]);
        Real cj = j > 0 ? C[j][j - 1] : Real(0);
        s.a.push_back(cj - C[j + 1][j]);
        s.b.push_back(j > 0 ? dg[j] / dg[j - 1] : Real(0));
    }
    for (int i = 0; i < M; ++i) s.coeffs.emplace_back(C[i].begin(), C[i].begin() + i + 1);
    return s;
}

OPSystem<Real> build_op_system(const PerturbedWeight& w, int m) {
    w.validate();
    require_precision(w.prec);
    if (m < 0) throw DomainError("build_op_system: negative degree");
    const int P = w.prec.decimal_digits;
    OPSystem<Real> lo = hankel_system(w, m, P);
    OPSystem<Real> hi = hankel_system(w, m, P + 20);
    PrecisionGuard g(P);
    const Real tol = pow(Real(10), -P / 2);
    for (int j = 0; j <= m; ++j) {
        if (abs(lo.log_h[j] - hi.log_h[j]) > tol)
            throw PrecisionError("build_op_system: log h_" + std::to_string(j) + " unstable at " +
                                 std::to_string(P) + " digits (degree " + std::to_string(m) +
                                 " wants about " + std::to_string(default_op_precision(m)) + ")");
    }
    return lo;
}

template <class S>
OPSystem<S> discretized_op_system(const PerturbedWeight& w, int m) {
    using std::abs;
    using std::exp;
    using std::log;
    using std::sqrt;
    w.validate();
    if (m < 0) throw DomainError("discretized_op_system: negative degree");
    const bool sym = w.ensemble == Ensemble::pGUE;

    // Nodes x = softplus(u)^2 (pLUE) or +-softplus(u) (pGUE): exponential clustering at the
    // hard edge and a nearly linear sqrt(x) (resp. x) further out, where the orthogonal
    // polynomials oscillate at a fixed rate in that variable.
    auto softplus = [](S u) { return u > 30 ? u + std::log1p(exp(-u)) : std::log1p(exp(u)); };
    auto node = [&](S u) {
        S s = softplus(u);
        return sym ? s : s * s;
    };
    auto log_jac = [&](S u) {
        S sg = -softplus(-u);  // log sigma(u)
        return sym ? sg : log(S(2)) + log(softplus(u)) + sg;
    };
    // u with node(u) = x, for x > 0
    auto softplus_inv = [&](double x) {
        double s = sym ? x : std::sqrt(x);
        return s > 30 ? s + std::log(-std::expm1(-s)) : std::log(std::expm1(s));
    };
    auto log_integrand = [&](double u, int p) {
        S x = node(S(u));
        return static_cast<double>(log_weight(w, x) + log_jac(S(u)) + S(p) * log(x));
    };

    const S eps = std::numeric_limits<S>::epsilon();
    const double drop = -std::log(static_cast<double>(eps)) + 12;
    const int top = 2 * m + 2;
    double peak0 = -1e300, peak_top = -1e300, u0 = 0, utop = 0;
    for (double u = -40; u <= 60; u += 0.01) {
        double v0 = log_integrand(u, 0), vt = log_integrand(u, top);
        if (v0 > peak0) peak0 = v0, u0 = u;
        if (vt > peak_top) peak_top = vt, utop = u;
    }
    double uL = u0, uR = utop;
    while (log_integrand(uL, 0) > peak0 - drop && uL > -5000) uL -= 0.25;
    while (log_integrand(uR, top) > peak_top - drop && uR < 5000) uR += 0.05;
    double h = std::min(0.25, (uR - uL) / (4 * (m + 2)));

    struct Run {
        std::vector<S> a, b, log_h;
    };
    // Recurrence coefficients of the discrete measure by the Gragg-Harrod (RKPW)
    // update, which adds one node at a time with Givens-type rotations.
    auto run = [&](double lo, double hi, double step) {
        const int N = static_cast<int>(std::ceil((hi - lo) / step)) + 1;
        std::vector<S> x, lw;
        for (int i = 0; i < N; ++i) {
            S u = S(lo) + S(step) * i;
            S xi = node(u);
            S l = log_weight(w, xi) + log_jac(u) + log(S(step));
            x.push_back(xi);
            lw.push_back(l);
            if (sym) {
                x.push_back(-xi);
                lw.push_back(l);
            }
        }
        const S lmax = *std::max_element(lw.begin(), lw.end());
        if (lw.back() - lmax < log(std::numeric_limits<S>::min()) + 40)
            throw PrecisionError("discretized_op_system: weight spans more than the exponent range of the scalar type");
        std::vector<S> xs, ws;
        for (size_t i = 0; i < x.size(); ++i) {
            S v = exp(lw[i] - lmax);
            if (v > 0) {
                xs.push_back(x[i]);
                ws.push_back(v);
            }
        }
        const int M = static_cast<int>(xs.size());
        if (M < 2 * (m + 2)) throw PrecisionError("discretized_op_system: too few nodes");
        std::vector<S> p0(xs), p1(M, S(0));
        p1[0] = ws[0];
        for (int n = 0; n < M - 1; ++n) {
            S pn = ws[n + 1], gam = 1, sig = 0, t = 0;
            const S lam = xs[n + 1];
            for (int k = 0; k <= n + 1; ++k) {
                S rho = p1[k] + pn;
                S tmp = gam * rho, tsig = sig;
                if (rho <= 0) {
                    gam = 1;
                    sig = 0;
                } else {
                    gam = p1[k] / rho;
                    sig = pn / rho;
                }
                S tk = sig * (p0[k] - lam) - gam * t;
                p0[k] -= tk - t;
                t = tk;
                pn = sig <= 0 ? tsig * p1[k] : t * t / sig;
                p1[k] = tmp;
            }
        }
        Run r;
        r.log_h.push_back(lmax + log(p1[0]));
        r.b.push_back(S(0));
        for (int j = 0; j <= m; ++j) {
            r.a.push_back(sym ? S(0) : p0[j]);
            if (j > 0) {
                r.b.push_back(p1[j]);
                r.log_h.push_back(r.log_h.back() + log(p1[j]));
            }
        }
        return r;
    };
    // upper bound of the Jacobi spectrum, i.e. of the zeros of p_{m+1}
    auto edge = [&](const Run& r) {
        S e = 0;
        for (int j = 0; j <= m; ++j) {
            S v = abs(r.a[j]) + sqrt(r.b[j]) + (j < m ? sqrt(r.b[j + 1]) : S(0));
            e = std::max(e, v);
        }
        return static_cast<double>(e);
    };

    const S agree_tol = S(1e3) * eps * S(m + 1);
    Run cur;
    for (int it = 0;; ++it) {
        if (it > 12) throw PrecisionError("discretized_op_system: discretization did not converge");
        cur = run(uL, uR, h);
        uR = std::max(uR, static_cast<double>(softplus_inv(edge(cur))) + 0.5);
        const double uL2 = uL - 1, uR2 = uR + 0.25, h2 = h / 2;
        Run fine = run(uL2, uR2, h2);
        bool same = true;
        for (int j = 0; j <= m && same; ++j) {
            same = abs(fine.a[j] - cur.a[j]) <= agree_tol * (1 + abs(fine.a[j])) &&
                   abs(fine.b[j] - cur.b[j]) <= agree_tol * (1 + abs(fine.b[j]));
        }
        cur = fine;
        uL = uL2;
        uR = uR2;
        h = h2;
        if (same) break;
    }

    OPSystem<S> s;
    s.weight = w;
    s.degree = m;
    s.a = cur.a;
    s.b = cur.b;
    s.log_h = cur.log_h;
    for (const S& l : s.log_h) s.h.push_back(exp(l));
    return s;
}

template <class S>
S op_eval(const OPSystem<S>& sys, int j, const S& x) {
    if (j < 0 || j > sys.degree + 1)
        throw DomainError("op_eval: degree out of range");
    S pm(0), pc(1);
    for (int i = 0; i < j; ++i) {
        S pn = (x - sys.a[i]) * pc - (i > 0 ? sys.b[i] * pm : S(0));
        pm = pc;
        pc = pn;
    }
    return pc;
}

template <class S>
S cd_kernel(const OPSystem<S>& sys, int n, const S& x, const S& y) {
    using std::exp;
    using std::isinf;
    using std::sqrt;
    if (n < 1 || n > sys.degree) throw DomainError("cd_kernel: need 1 <= n <= degree");
    const S lx = log_weight(sys.weight, x), ly = log_weight(sys.weight, y);
    if (isinf(lx) && lx < 0) return S(0);
    if (isinf(ly) && ly < 0) return S(0);
    const S sb = sqrt(sys.b[n]);
    OrthoState<S> X = orthonormal_at(sys, n, x);
    if (x == y) {
        S v = sb * (X.dcur * X.prev - X.dprev * X.cur);
        return v * exp(lx + 2 * X.log_scale);
    }
    OrthoState<S> Y = orthonormal_at(sys, n, y);
    S v = sb * (X.cur * Y.prev - X.prev * Y.cur) / (x - y);
    return v * exp((lx + ly) / 2 + X.log_scale + Y.log_scale);
}

template <class S>
S log_partition(const OPSystem<S>& sys, int n) {
    if (n < 1 || n > sys.degree + 1) throw DomainError("log_partition: need 1 <= n <= degree + 1");
    S v = 0;
    for (int j = 0; j < n; ++j) v += sys.log_h[j];
    return v;
}

Real partition(const PerturbedWeight& w, int n) {
    if (n < 1) throw DomainError("partition: n must be positive");
    OPSystem<Real> s = build_op_system(w, n - 1);
    PrecisionGuard g(w.prec.decimal_digits);
    return log_partition(s, n);
}

GueLueResiduals pgue_plue_residual(int n, int k, const Real& alpha_in, const Real& t_in, Precision prec) {
    if (n < 1) throw DomainError("pgue_plue_residual: n must be positive");
    PrecisionGuard g(prec.decimal_digits);
    const Real alpha = promote(alpha_in), t = promote(t_in);
    const Real half = Real(1) / 2;
    auto lue = [&](int size, const Real& a, const Real& tt) {
        return partition(PerturbedWeight{Ensemble::pLUE, size, k, a, tt, prec}, size);
    };
    auto gue = [&](int size) { return partition(PerturbedWeight{Ensemble::pGUE, size, k, alpha, t, prec}, size); };

    GueLueResiduals r;
    r.even = abs(gue(2 * n) - lue(n, alpha - half, t) - lue(n, alpha + half, t));

    const Real N(n), e = Real(k + 1) / k;
    const Real t1 = pow((2 * N + 1) / (2 * N + 2), e) * t;
    const Real t2 = pow((2 * N + 1) / (2 * N), e) * t;
    const Real pre = (N + alpha + half) * (N * log(2 * N / (2 * N + 1)) + (N + 1) * log((2 * N + 2) / (2 * N + 1)));
    r.odd = abs(gue(2 * n + 1) - pre - lue(n + 1, alpha - half, t1) - lue(n, alpha + half, t2));
    return r;
}

DiffIdentityResiduals diff_identity_residual(const PerturbedWeight& w, int n) {
    w.validate();
    if (w.ensemble != Ensemble::pLUE) throw DomainError("diff_identity_residual: pLUE weight expected");
    if (!(w.t > 0)) throw DomainError("diff_identity_residual: t > 0 required");
    const int P = w.prec.decimal_digits;
    PrecisionGuard g(P);
    const Real t = promote(w.t), alpha = promote(w.alpha), nw(w.n);

    auto logz = [&](Ensemble e, const Real& tt) {
        PerturbedWeight v = w;
        v.ensemble = e;
        v.t = tt;
        return partition(v, n);
    };
    // five-point central difference with one Richardson step
    auto derivative = [&](Ensemble e, const Real& delta) {
        auto five = [&](const Real& dl) {
            return (-logz(e, t + 2 * dl) + 8 * logz(e, t + dl) - 8 * logz(e, t - dl) + logz(e, t - 2 * dl)) / (12 * dl);
        };
        Real d1 = five(delta), d2 = five(delta / 2);
        return (16 * d2 - d1) / 15;
    };
    const Real delta = t * pow(Real(10), -P / 8);
    DiffIdentityResiduals r;
    r.derivative = derivative(Ensemble::pLUE_scaled, delta);
    r.derivative_half_step = derivative(Ensemble::pLUE_scaled, delta / 2);
    if (abs(r.derivative - r.derivative_half_step) > pow(Real(10), -P / 4) * (1 + abs(r.derivative)))
        throw PrecisionError("diff_identity_residual: Richardson estimates disagree; step too large for precision");

    // int x K~_n(x,x) dx = sum_j int x p~_j^2 w~ / h~_j, from monomial coefficients and moments
    PerturbedWeight ws = w;
    ws.ensemble = Ensemble::pLUE_scaled;
    OPSystem<Real> st = build_op_system(ws, n);
    Real xk = 0;
    for (int j = 0; j < n; ++j) {
        Real acc = 0;
        for (int i = 0; i <= j; ++i)
            for (int l = 0; l <= j; ++l) acc += st.coeffs[j][i] * st.coeffs[j][l] * st.moments[i + l + 1];
        xk += acc / st.h[j];
    }
    r.kernel_form = abs(r.derivative + nw * xk);

    // Y_1 from the large-z expansions of p_n and of the Cauchy transform of p_{n-1}
    OPSystem<Real> s = build_op_system(w, n);
    const Real y11 = s.coeffs[n][n - 1];
    Real q = 0;
    for (int i = 0; i <= n - 1; ++i) q += s.coeffs[n - 1][i] * s.moments[i + n];
    const Real y22 = q / s.h[n - 1];
    const Real rhs = (Real(n) * n + alpha * n) / t + nw / (2 * t) * (y11 - y22);
    r.residue_form = abs(derivative(Ensemble::pLUE, delta) - rhs);
    return r;
}

template Real log_weight<Real>(const PerturbedWeight&, const Real&);
template double log_weight<double>(const PerturbedWeight&, const double&);
template long double log_weight<long double>(const PerturbedWeight&, const long double&);

template OPSystem<double> discretized_op_system<double>(const PerturbedWeight&, int);
template OPSystem<long double> discretized_op_system<long double>(const PerturbedWeight&, int);

template Real op_eval<Real>(const OPSystem<Real>&, int, const Real&);
template double op_eval<double>(const OPSystem<double>&, int, const double&);
template long double op_eval<long double>(const OPSystem<long double>&, int, const long double&);

template Real cd_kernel<Real>(const OPSystem<Real>&, int, const Real&, const Real&);
template double cd_kernel<double>(const OPSystem<double>&, int, const double&, const double&);
template long double cd_kernel<long double>(const OPSystem<long double>&, int, const long double&,
                                            const long double&);

template Real log_partition<Real>(const OPSystem<Real>&, int);
template double log_partition<double>(const OPSystem<double>&, int);
template long double log_partition<long double>(const OPSystem<long double>&, int);

}  // namespace p3lab

#include "p3lab/specfun.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <limits>

namespace p3lab {

namespace {

constexpr int kMaxGuard = 4000;
const double kLn10 = std::log(10.0);

Real gamma_fn(const Real& x) {
    Real r;
    mpfr_gamma(r.backend().data(), x.backend().data(), MPFR_RNDN);
    return r;
}

Real euler_gamma() {
    Real r;
    mpfr_const_euler(r.backend().data(), MPFR_RNDN);
    return r;
}

bool is_integer(const Real& nu) { return nu == floor(nu); }

int guard_for(int prec, double loss) {
    int g = prec + static_cast<int>(std::ceil(loss)) + 10;
    if (g > prec + kMaxGuard)
        throw PrecisionError("special function evaluation needs " + std::to_string(g) +
                             " digits, beyond the supported range");
    return g;
}

template <class T>
Real mag(const T& x) {
    return abs(x);
}

// sum_k sgn^k (w/2)^{2k+nu} / (k! Gamma(k+nu+1)); nu must not be a negative integer.
template <class T>
T power_series(const Real& nu_in, const T& w_in, int sgn, int digits) {
    const Real nu = promote(nu_in);
    const T w = promote(w_in);
    const Real tol = pow(Real(10), -digits);
    T half = w / Real(2);
    T t = pow(half, nu) / gamma_fn(nu + 1);
    T q = half * half * Real(sgn);
    T sum = t;
    const double wabs = static_cast<double>(mag(w));
    for (int k = 0; k < 1000000; ++k) {
        t *= q / (Real(k + 1) * (nu + k + 1));
        sum += t;
        if (k > wabs && mag(t) <= tol * mag(sum)) return sum;
        if (mag(sum) == 0 && mag(t) == 0) return sum;
    }
    throw PrecisionError("Bessel power series did not converge");
}

// K_n for integer n >= 0.
template <class T>
T bessel_k_integer(int n, const T& w_in, int digits) {
    const T w = promote(w_in);
    const Real tol = pow(Real(10), -digits);
    T half = w / Real(2);
    T q = half * half;
    T first = T(0);
    if (n > 0) {
        T term = pow(half, Real(-n)) * gamma_fn(Real(n));  // k = 0: (n-1)!/0!
        first = term;
        for (int k = 1; k < n; ++k) {
            term *= -q / (Real(k) * Real(n - k));
            first += term;
        }
        first /= Real(2);
    }
    T in = power_series(Real(n), w, 1, digits);
    T lg = Real(n % 2 == 0 ? -1 : 1) * log(half) * in;
    Real psi1 = -euler_gamma();
    Real psi2 = psi1;
    for (int j = 1; j <= n; ++j) psi2 += Real(1) / j;
    T t = pow(half, Real(n)) / gamma_fn(Real(n + 1));
    T sum = t * (psi1 + psi2);
    const double wabs = static_cast<double>(mag(w));
    for (int k = 0; k < 1000000; ++k) {
        t *= q / (Real(k + 1) * Real(n + k + 1));
        psi1 += Real(1) / (k + 1);
        psi2 += Real(1) / (n + k + 1);
        T add = t * (psi1 + psi2);
        sum += add;
        if (k > wabs && mag(add) <= tol * mag(sum)) break;
    }
    T last = Real(n % 2 == 0 ? 1 : -1) * sum / Real(2);
    return first + lg + last;
}

template <class T>
T bessel_k_any(const Real& nu_in, const T& w, int prec, double re_w, double abs_w) {
    Real nu = abs(nu_in);
    if (is_integer(nu)) {
        int g = guard_for(prec, (abs_w + std::max(re_w, 0.0)) / kLn10 + 2);
        PrecisionGuard pg(g);
        return bessel_k_integer(static_cast<int>(nu), T(w), g);
    }
    double s = std::abs(std::sin(M_PI * static_cast<double>(nu)));
    int g = guard_for(prec, (abs_w + std::max(re_w, 0.0)) / kLn10 - std::log10(s) + 2);
    PrecisionGuard pg(g);
    Real p = pi();
    Real nn = promote(nu);
    T a = power_series(-nn, T(w), 1, g);
    T b = power_series(nn, T(w), 1, g);
    return p / (2 * sin(p * nn)) * (a - b);
}

Real bessel_value(BesselKind kind, const Real& nu, const Real& x, int prec) {
    const double xd = static_cast<double>(x);
    switch (kind) {
        case BesselKind::J: {
            if (x < 0) throw DomainError("bessel J requires x >= 0");
            if (x == 0) {
                if (nu == 0) return Real(1);
                if (nu > 0) return Real(0);
                throw DomainError("bessel J at x = 0 requires order >= 0");
            }
            if (nu < 0 && is_integer(nu)) {
                Real r = bessel_value(kind, -nu, x, prec);
                return (static_cast<long>(nu) % 2 == 0) ? r : Real(-r);
            }
            int g = guard_for(prec, xd / kLn10);
            PrecisionGuard pg(g);
            return power_series(nu, Real(x), -1, g);
        }
        case BesselKind::I: {
            if (x <= 0) throw DomainError("bessel I requires x > 0");
            if (nu < 0 && is_integer(nu)) return bessel_value(kind, -nu, x, prec);
            int g = guard_for(prec, 0);
            PrecisionGuard pg(g);
            return power_series(nu, Real(x), 1, g);
        }
        case BesselKind::K: {
            if (x <= 0) throw DomainError("bessel K requires x > 0");
            return bessel_k_any(nu, Real(x), prec, xd, xd);
        }
    }
    throw DomainError("unknown Bessel kind");
}

}  // namespace

Real bessel(BesselKind kind, const Real& nu, const Real& x, Precision prec) {
    require_precision(prec);
    return bessel_value(kind, nu, x, prec.decimal_digits);
}

Real bessel_derivative(BesselKind kind, const Real& nu, const Real& x, Precision prec) {
    require_precision(prec);
    int p = prec.decimal_digits;
    PrecisionGuard pg(p + 10);
    Real f = bessel_value(kind, nu, x, p + 10);
    Real up = bessel_value(kind, nu + 1, x, p + 10);
    switch (kind) {
        case BesselKind::J: return -up + nu / x * f;
        case BesselKind::I: return up + nu / x * f;
        case BesselKind::K: return -up + nu / x * f;
    }
    return Real(0);
}

Complex bessel_complex(BesselKind kind, const Real& nu, const Complex& w, Precision prec) {
    require_precision(prec);
    if (w == Complex(0)) throw DomainError("complex Bessel at 0");
    const double re = static_cast<double>(w.real());
    const double ab = static_cast<double>(abs(w));
    const int p = prec.decimal_digits;
    switch (kind) {
        case BesselKind::I: {
            if (nu < 0 && is_integer(nu)) return bessel_complex(kind, -nu, w, prec);
            int g = guard_for(p, (ab - re) / kLn10);
            PrecisionGuard pg(g);
            return power_series(nu, Complex(w), 1, g);
        }
        case BesselKind::K: return bessel_k_any(nu, w, p, re, ab);
        case BesselKind::J: {
            if (nu < 0 && is_integer(nu)) {
                Complex r = bessel_complex(kind, -nu, w, prec);
                return (static_cast<long>(nu) % 2 == 0) ? r : Complex(-r);
            }
            int g = guard_for(p, (ab + std::abs(static_cast<double>(w.imag()))) / kLn10);
            PrecisionGuard pg(g);
            return power_series(nu, Complex(w), -1, g);
        }
    }
    throw DomainError("unknown Bessel kind");
}

namespace {

// Maclaurin series for Ai and Ai'.
AiryPairC airy_maclaurin(const Complex& z_in, int digits) {
    const Complex z = promote(z_in);
    const Real tol = pow(Real(10), -digits);
    Real c1 = pow(Real(3), Real(-2) / 3) / gamma_fn(Real(2) / 3);
    Real c2 = pow(Real(3), Real(-1) / 3) / gamma_fn(Real(1) / 3);
    Complex z3 = z * z * z;
    Complex f(Real(1)), a(Real(1));
    Complex gsum = z, b = z;
    Complex fp(Real(0)), c = z * z / Real(2);
    Complex gp(Real(1)), d(Real(1));
    const double zabs = static_cast<double>(abs(z));
    for (int k = 0; k < 1000000; ++k) {
        a *= z3 / (Real(3 * k + 2) * Real(3 * k + 3));
        b *= z3 / (Real(3 * k + 3) * Real(3 * k + 4));
        f += a;
        gsum += b;
        fp += c;
        c *= z3 / (Real(3 * k + 3) * Real(3 * k + 5));
        d *= z3 / (Real(3 * k + 1) * Real(3 * k + 3));
        gp += d;
        if (3.0 * k > zabs * 1.5 + 3 && abs(a) + abs(b) + abs(c) + abs(d) <= tol * (abs(f) + abs(gsum)))
            break;
    }
    return {c1 * f - c2 * gsum, c1 * fp - c2 * gp};
}

// Asymptotic expansion, valid for |arg z| <= 2pi/3 when |zeta| is large.
AiryPairC airy_asymptotic(const Complex& z_in, int digits) {
    const Complex z = promote(z_in);
    const Real tol = pow(Real(10), -digits);
    Complex lz = log(z);
    Complex zeta = Real(2) / 3 * exp(Real(1.5) * lz);
    Complex q = exp(lz / Real(4));
    Complex su(Real(1)), sv(Real(1));
    Real u = 1;
    Complex zp(Real(1));
    Real last = std::numeric_limits<double>::max();
    for (int k = 1; k < 100000; ++k) {
        u *= Real(6 * k - 5) * Real(6 * k - 3) * Real(6 * k - 1) / (Real(2 * k - 1) * 216 * k);
        Real v = -Real(6 * k + 1) / Real(6 * k - 1) * u;
        zp *= -zeta;
        Complex tu = u / zp, tv = v / zp;
        Real m = abs(tu);
        if (m > last) break;
        last = m;
        su += tu;
        sv += tv;
        if (m <= tol) break;
    }
    Real sp = 2 * sqrt(pi());
    Complex e = exp(-zeta);
    return {e / (sp * q) * su, -q * e / sp * sv};
}

}  // namespace

AiryPairC airy_complex(const Complex& z, Precision prec) {
    require_precision(prec);
    const int p = prec.decimal_digits;
    const double zabs = static_cast<double>(abs(z));
    const double zeta = 2.0 / 3.0 * std::pow(zabs, 1.5);
    if (2.0 * zeta > (p + 15) * kLn10 && zeta > 12) {
        int g = p + 10;
        PrecisionGuard pg(g);
        Real ang = abs(arg(z));
        if (ang <= 2 * pi() / 3) return airy_asymptotic(z, g);
        Complex w = std::polar(Real(1), 2 * pi() / 3);
        AiryPairC a = airy_asymptotic(w * z, g);
        AiryPairC b = airy_asymptotic(w * w * z, g);
        return {-w * a.ai - w * w * b.ai, -w * w * a.aip - w * b.aip};
    }
    int g = guard_for(p, 2 * zeta / kLn10 + 2);
    PrecisionGuard pg(g);
    return airy_maclaurin(z, g);
}

AiryPair airy(const Real& x, Precision prec) {
    AiryPairC c = airy_complex(Complex(x, Real(0)), prec);
    return {c.ai.real(), c.aip.real()};
}

namespace {

// Extra digits needed to resolve a divided difference with |u - v| small.
int near_diag_guard(const Real& u, const Real& v) {
    Real d = abs(u - v);
    Real s = abs(u) + abs(v) + 1;
    double r = static_cast<double>(log10(s / d));
    return r > 0 ? static_cast<int>(std::ceil(r)) : 0;
}

}  // namespace

Real bessel_kernel(const Real& alpha, const Real& u, const Real& v, Precision prec) {
    require_precision(prec);
    if (u <= 0 || v <= 0) throw DomainError("bessel_kernel requires u, v > 0");
    if (alpha <= -1) throw DomainError("bessel_kernel requires alpha > -1");
    const int p = prec.decimal_digits;
    if (u == v) {
        PrecisionGuard pg(p + 10);
        Real x = sqrt(promote(u));
        Precision q{p + 10};
        Real j = bessel(BesselKind::J, alpha, x, q);
        Real jp = bessel(BesselKind::J, alpha + 1, x, q);
        Real jm = bessel(BesselKind::J, alpha - 1, x, q);
        return (j * j - jp * jm) / 4;
    }
    Precision q{p + 10 + near_diag_guard(u, v)};
    PrecisionGuard pg(q.decimal_digits);
    Real su = sqrt(promote(u)), sv = sqrt(promote(v));
    Real ju = bessel(BesselKind::J, alpha, su, q), jv = bessel(BesselKind::J, alpha, sv, q);
    Real dju = bessel_derivative(BesselKind::J, alpha, su, q);
    Real djv = bessel_derivative(BesselKind::J, alpha, sv, q);
    return (ju * sv * djv - jv * su * dju) / (2 * (Real(u) - Real(v)));
}

Real airy_kernel(const Real& u, const Real& v, Precision prec) {
    require_precision(prec);
    const int p = prec.decimal_digits;
    if (u == v) {
        PrecisionGuard pg(p + 10);
        AiryPair a = airy(u, Precision{p + 10});
        return a.aip * a.aip - promote(u) * a.ai * a.ai;
    }
    Precision q{p + 10 + near_diag_guard(u, v)};
    PrecisionGuard pg(q.decimal_digits);
    AiryPair a = airy(Real(u), q), b = airy(Real(v), q);
    return (a.ai * b.aip - b.ai * a.aip) / (promote(u) - promote(v));
}

BesselRegion bessel_region_of(const Complex& z) {
    if (z == Complex(0)) throw DomainError("z = 0 is on the Bessel contour");
    Real a = arg(z);
    Real r = 2 * pi() / 3;
    if (abs(a) < r) return BesselRegion::Omega1;
    if (a > r && a < pi()) return BesselRegion::Omega2;
    if (a < -r && a > -pi()) return BesselRegion::Omega3;
    throw DomainError("z lies on the Bessel jump contour");
}

ComplexMatrix2 bessel_model_matrix(const Complex& z, BesselRegion region, const Real& alpha_in,
                                   Precision prec) {
    require_precision(prec);
    if (bessel_region_of(z) != region) throw DomainError("z is not in the requested sector");
    const int p = prec.decimal_digits + 10;
    PrecisionGuard pg(p);
    Precision q{p};
    const Complex I1(Real(0), Real(1));
    Real pie = pi();
    Complex w = sqrt(promote(z));
    const Real alpha = promote(alpha_in);
    Complex iv = bessel_complex(BesselKind::I, alpha, w, q);
    Complex kv = bessel_complex(BesselKind::K, alpha, w, q);
    Complex ivp = bessel_complex(BesselKind::I, alpha + 1, w, q) + alpha / w * iv;
    Complex kvp = -bessel_complex(BesselKind::K, alpha + 1, w, q) + alpha / w * kv;
    ComplexMatrix2 b;
    b << iv, I1 / pie * kv, pie * I1 * w * ivp, -w * kvp;
    Real sp = sqrt(pie);
    Complex c = I1 * ((4 * alpha * alpha + 3) / 8);
    ComplexMatrix2 pre;
    pre << Complex(sp), Complex(0), c * sp, Complex(1 / sp);
    ComplexMatrix2 h = ComplexMatrix2::Identity();
    if (region == BesselRegion::Omega2) h(1, 0) = -std::polar(Real(1), pie * alpha);
    if (region == BesselRegion::Omega3) h(1, 0) = std::polar(Real(1), -pie * alpha);
    return pre * b * h;
}

ComplexMatrix2 airy_model_matrix(const Complex& z, Precision prec) {
    require_precision(prec);
    if (z == Complex(0)) throw DomainError("z = 0 is on the Airy contour");
    const int p = prec.decimal_digits + 10;
    PrecisionGuard pg(p);
    Precision q{p};
    Real pie = pi();
    Real a = arg(z);
    Real r = 2 * pie / 3;
    if (z.imag() == 0 || abs(abs(a) - r) == 0) throw DomainError("z lies on the Airy jump contour");
    const Complex I1(Real(0), Real(1));
    const Complex w = std::polar(Real(1), r);
    AiryPairC a0 = airy_complex(z, q);
    ComplexMatrix2 m;
    if (a > 0) {
        AiryPairC a2 = airy_complex(w * w * z, q);
        m << a0.ai, a2.ai, a0.aip, w * w * a2.aip;
    } else {
        AiryPairC a1 = airy_complex(w * z, q);
        m << a0.ai, -w * w * a1.ai, a0.aip, -a1.aip;
    }
    ComplexMatrix2 e = ComplexMatrix2::Zero();
    e(0, 0) = std::polar(Real(1), -pie / 6);
    e(1, 1) = std::polar(Real(1), pie / 6);
    ComplexMatrix2 ma = ComplexMatrix2::Zero();
    Complex pref = sqrt(2 * pie) * std::polar(Real(1), pie / 6);
    ma(0, 0) = pref;
    ma(1, 1) = -I1 * pref;
    ComplexMatrix2 t = ComplexMatrix2::Identity();
    if (a > r) t(1, 0) = Complex(-1);
    if (a < -r) t(1, 0) = Complex(1);
    return ma * m * e * t;
}

namespace {

struct F2Integrand {
    Real alpha, s;
    int k;
    Complex operator()(const Complex& tau) const {
        Complex r = pow(tau, alpha) * exp(-tau);
        if (s > 0) r *= exp(Real(-2) * pow(Complex(s) / tau, Real(k)));
        return r;
    }
    Real operator()(const Real& tau) const {
        Real r = pow(tau, alpha) * exp(-tau);
        if (s > 0) r *= exp(-2 * pow(s / tau, k));
        return r;
    }
};

template <class Quad, class Fn>
Complex integrate_c(Quad& q, Fn f, const Real& a, const Real& b, const Real& tol) {
    Real re = q.integrate([&](const Real& t) { return f(t).real(); }, a, b, tol);
    Real im = q.integrate([&](const Real& t) { return f(t).imag(); }, a, b, tol);
    return Complex(re, im);
}

template <class Quad, class Fn>
Complex integrate_c_inf(Quad& q, Fn f, const Real& a, const Real& tol) {
    Real re = q.integrate([&](const Real& t) { return f(t + a).real(); }, tol);
    Real im = q.integrate([&](const Real& t) { return f(t + a).imag(); }, tol);
    return Complex(re, im);
}

// int_0^inf F(tau) / (tau + z) dtau
Complex cauchy_integral(const F2Integrand& F, const Complex& z, int digits) {
    using boost::math::quadrature::exp_sinh;
    using boost::math::quadrature::tanh_sinh;
    const Real tol = pow(Real(10), -digits);
    tanh_sinh<Real> ts(15, pow(Real(10), -4 * digits));
    exp_sinh<Real> es(15);
    const Complex c = -z;
    // interior maximum of tau^a e^{-tau} e^{-2(s/tau)^k}
    Real tmax = F.alpha + 1 > 1 ? Real(F.alpha + 1) : Real(1);
    if (F.s > 0) {
        for (int it = 0; it < 200; ++it) {
            Real g = F.alpha / tmax - 1 + 2 * F.k * pow(F.s, F.k) / pow(tmax, F.k + 1);
            Real gp = -F.alpha / (tmax * tmax) -
                      2 * F.k * (F.k + 1) * pow(F.s, F.k) / pow(tmax, F.k + 2);
            Real step = g / gp;
            Real next = tmax - step;
            if (next <= 0) next = tmax / 2;
            if (abs(next - tmax) < tol * tmax) {
                tmax = next;
                break;
            }
            tmax = next;
        }
    }
    bool near = c.real() > 0 && abs(c.imag()) < c.real() / 2;
    if (!near) {
        Real az = abs(z);
        Real split = az > tmax ? az : tmax;
        auto g = [&](const Real& t) { return Complex(F(t)) / (Complex(t) + z); };
        Real a = az < tmax ? az : tmax;
        Complex sum = integrate_c(ts, g, Real(0), a, tol);
        if (split > a) sum += integrate_c(ts, g, a, split, tol);
        sum += integrate_c_inf(es, g, split, tol);
        return sum;
    }
    Real a = c.real() / 2, b = 2 * c.real();
    Complex fc = F(c);
    auto g = [&](const Real& t) { return Complex(F(t)) / (Complex(t) + z); };
    auto gsub = [&](const Real& t) { return (Complex(F(t)) - fc) / (Complex(t) - c); };
    Complex sum = integrate_c(ts, g, Real(0), a, tol);
    if (tmax > a && tmax < b) {
        sum += integrate_c(ts, gsub, a, tmax, tol);
        sum += integrate_c(ts, gsub, tmax, b, tol);
    } else {
        sum += integrate_c(ts, gsub, a, b, tol);
    }
    sum += fc * (log(Complex(b) - c) - log(Complex(a) - c));
    sum += integrate_c_inf(es, g, b, tol);
    return sum;
}

}  // namespace

Complex f2_origin(const Complex& z, const Real& s, int k, const Real& alpha, Precision prec) {
    require_precision(prec);
    if (s < 0) throw DomainError("f2_origin requires s >= 0");
    if (k < 1) throw DomainError("f2_origin requires k >= 1");
    if (s == 0 && alpha <= -1) throw DomainError("f2_origin: integrand not integrable for s = 0, alpha <= -1");
    if (z.imag() == 0 && z.real() <= 0) throw DomainError("f2_origin: z on the integration ray");
    const int p = prec.decimal_digits + 10;
    PrecisionGuard pg(p);
    F2Integrand F{promote(alpha), promote(s), k};
    Complex zz = promote(z);
    Complex integral = cauchy_integral(F, zz, prec.decimal_digits);
    const Complex I1(Real(0), Real(1));
    return exp(-zz) / (2 * pi() * I1) * integral;
}

Complex entire_h(const Complex& z, const Real& alpha, Precision prec) {
    Complex f = f2_origin(z, Real(0), 1, alpha, prec);
    PrecisionGuard pg(prec.decimal_digits + 10);
    const Complex I1(Real(0), Real(1));
    if (is_integer(alpha)) return -f + I1 / pi() * log(sqrt(Complex(z)) / Real(2));
    return -f - pow(Complex(z), alpha) / (Real(2) * sin(pi() * alpha) * I1);
}

}  // namespace p3lab

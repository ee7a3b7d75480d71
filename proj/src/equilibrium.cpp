#include "p3lab/equilibrium.hpp"

#include "quadrature.hpp"

namespace p3lab {

namespace {

int quad_digits(const EquilibriumMeasure& mu) { return mu.prec.decimal_digits - 5; }

// (h b / pi) int_lo^hi F(theta) cos^2(theta) dtheta, the measure in the x = b sin^2(theta) chart.
template <class F>
auto theta_integral(const EquilibriumMeasure& mu, F f, const Real& lo, const Real& hi) {
    auto g = [&](const Real& t) {
        Real c = cos(t);
        return f(t) * (c * c);
    };
    return mu.h * mu.b / pi() * detail::integrate(g, lo, hi, quad_digits(mu));
}

template <class F>
Complex theta_integral_c(const EquilibriumMeasure& mu, F f, const Real& lo, const Real& hi) {
    auto g = [&](const Real& t) {
        Real c = cos(t);
        return f(t) * (c * c);
    };
    return detail::integrate_complex(g, lo, hi, quad_digits(mu)) * (mu.h * mu.b / pi());
}

Real log_potential_raw(const EquilibriumMeasure& mu, const Real& x) {
    const Real hp = pi() / 2;
    if (x > 0 && x < mu.b) {
        // x - b sin^2 t = b sin(t* - t) sin(t* + t)
        const Real ts = asin(sqrt(x / mu.b));
        auto f = [&](const Real& t) { return log(abs(mu.b * sin(ts - t) * sin(ts + t))); };
        return theta_integral(mu, f, Real(0), ts) + theta_integral(mu, f, ts, hp);
    }
    auto f = [&](const Real& t) {
        Real s = sin(t);
        return log(abs(x - mu.b * s * s));
    };
    return theta_integral(mu, f, Real(0), hp);
}

Complex R(const EquilibriumMeasure& mu, const Complex& s) { return sqrt((s - mu.b) / s); }

// -1/2 h int along the straight segment p -> q of R.
Complex xi_segment(const EquilibriumMeasure& mu, const Complex& p, const Complex& q) {
    const Complex dz = q - p;
    auto f = [&](const Real& t) { return R(mu, p + dz * t); };
    return detail::integrate_complex(f, Real(0), Real(1), quad_digits(mu)) * dz * (-mu.h / 2);
}

Complex xi_path(const EquilibriumMeasure& mu, const Complex& z, int side) {
    if (side == 0) return xi_segment(mu, Complex(mu.b), z);
    // b -> b + i side H -> Re z + i side H -> z keeps away from the cut [0, b].
    const Real H = mu.b / 2;
    const Complex a(mu.b, H * side), c(z.real(), H * side);
    return xi_segment(mu, Complex(mu.b), a) + xi_segment(mu, a, c) + xi_segment(mu, c, z);
}

}  // namespace

Real EquilibriumMeasure::density(const Real& x) const {
    if (!(x > 0 && x < b)) return Real(0);
    return h / (2 * pi()) * sqrt((b - x) / x);
}

Real equilibrium_moment(const EquilibriumMeasure& mu, int m) {
    PrecisionGuard g(mu.prec.decimal_digits);
    auto f = [&](const Real& t) {
        Real s = sin(t);
        return pow(mu.b * s * s, m);
    };
    return theta_integral(mu, f, Real(0), pi() / 2);
}

Real log_potential(const EquilibriumMeasure& mu, const Real& x) {
    PrecisionGuard g(mu.prec.decimal_digits);
    return log_potential_raw(mu, promote(x));
}

Real variational_residual(const EquilibriumMeasure& mu, const Real& x) {
    PrecisionGuard g(mu.prec.decimal_digits);
    const Real xp = promote(x);
    return 2 * log_potential_raw(mu, xp) - xp - mu.ell;
}

EquilibriumMeasure laguerre_equilibrium(Precision prec) {
    require_precision(prec);
    PrecisionGuard g(prec.decimal_digits);
    EquilibriumMeasure mu{Real(1), Real(4), Real(0), prec};
    // Normalization fixes h = 4 / b; the variational equality (flat residual on the support)
    // fixes b. delta(b) is the residual difference between b/4 and 3b/4.
    auto delta = [&](const Real& b) {
        EquilibriumMeasure t{b, 4 / b, Real(0), prec};
        return (2 * log_potential_raw(t, 3 * b / 4) - 3 * b / 4) -
               (2 * log_potential_raw(t, b / 4) - b / 4);
    };
    Real b0 = 1, b1 = 2;
    Real d0 = delta(b0), d1 = delta(b1);
    const Real tol = pow(Real(10), -(prec.decimal_digits - 8));
    for (int it = 0; it < 60 && abs(d1) > tol; ++it) {
        Real b2 = b1 - d1 * (b1 - b0) / (d1 - d0);
        b0 = b1;
        d0 = d1;
        b1 = b2;
        d1 = delta(b1);
    }
    if (abs(d1) > tol) throw PrecisionError("laguerre_equilibrium: endpoint iteration did not converge");
    mu.b = b1;
    mu.h = 4 / b1;
    mu.ell = 2 * log_potential_raw(mu, b1 / 2) - b1 / 2;
    return mu;
}

Complex g_eq(const EquilibriumMeasure& mu, const Complex& z_in) {
    if (z_in.imag() == 0 && z_in.real() <= mu.b) throw DomainError("g_eq: z on (-inf, b]");
    PrecisionGuard g(mu.prec.decimal_digits);
    const Complex z = promote(z_in);
    const Real x = z.real(), y = z.imag();
    const Real hp = pi() / 2;
    if (x > 0 && x < mu.b) {
        const Real ts = asin(sqrt(x / mu.b));
        auto f = [&](const Real& t) {
            return log(Complex(mu.b * sin(ts - t) * sin(ts + t), y));
        };
        return theta_integral_c(mu, f, Real(0), ts) + theta_integral_c(mu, f, ts, hp);
    }
    auto f = [&](const Real& t) {
        Real s = sin(t);
        return log(z - mu.b * s * s);
    };
    return theta_integral_c(mu, f, Real(0), hp);
}

Complex xi_eq(const EquilibriumMeasure& mu, const Complex& z_in) {
    if (z_in.imag() == 0 && z_in.real() <= mu.b) throw DomainError("xi_eq: z on (-inf, b]");
    PrecisionGuard g(mu.prec.decimal_digits);
    const Complex z = promote(z_in);
    if (z.real() > mu.b) return xi_path(mu, z, 0);
    return xi_path(mu, z, z.imag() > 0 ? 1 : -1);
}

Complex xi_eq_boundary(const EquilibriumMeasure& mu, const Real& x, bool above) {
    PrecisionGuard g(mu.prec.decimal_digits);
    const Complex z(promote(x), Real(0));
    if (x > mu.b) return xi_path(mu, z, 0);
    if (x == 0) throw DomainError("xi_eq_boundary: x = 0 is a branch point");
    return xi_path(mu, z, above ? 1 : -1);
}

ConformalMap conformal_f(const EquilibriumMeasure& mu, const Complex& z_in) {
    PrecisionGuard g(mu.prec.decimal_digits);
    ConformalMap out;
    out.radius = mu.b / 2;
    out.c1 = mu.c1();
    out.fprime0 = -out.c1;
    const Complex z = promote(z_in);
    if (abs(z) > out.radius) throw DomainError("conformal_f: z outside the validated disk |z| <= b/2");
    if (z == Complex(Real(0))) {
        out.value = Complex(Real(0));
        return out;
    }
    auto f = [&](const Real& t) { return sqrt(Complex(mu.b) - z * (t * t)); };
    Complex I = detail::integrate_complex(f, Real(0), Real(1), quad_digits(mu)) * mu.h;
    out.value = -z * I * I;
    return out;
}

}  // namespace p3lab

#include "doctest.h"

#include "p3lab/specfun.hpp"

#include <boost/math/special_functions/airy.hpp>
#include <boost/math/special_functions/bessel.hpp>

using namespace p3lab;

namespace {

const Precision P{50};

Real maclaurin_i(const Real& nu, const Real& x) {
    Real sum = 0;
    for (int k = 0; k < 400; ++k) {
        Real t = pow(x / 2, 2 * k + nu) / (boost::multiprecision::tgamma(Real(k + 1)) *
                                          boost::multiprecision::tgamma(k + nu + 1));
        sum += t;
        if (abs(t) < pow(Real(10), -80)) break;
    }
    return sum;
}

double mnorm(const ComplexMatrix2& m) {
    double r = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r = std::max(r, static_cast<double>(abs(m(i, j))));
    return r;
}

ComplexMatrix2 cmat(const Complex& a, const Complex& b, const Complex& c, const Complex& d) {
    ComplexMatrix2 m;
    m << a, b, c, d;
    return m;
}

}  // namespace

TEST_CASE("bessel J at zero") {
    PrecisionGuard g(60);
    CHECK(bessel(BesselKind::J, Real(0), Real(0), P) == 1);
}

TEST_CASE("bessel I half order closed form") {
    PrecisionGuard g(80);
    Real v = bessel(BesselKind::I, Real(0.5), Real(2), P);
    Real closed = sqrt(Real(2) / (2 * pi())) * sinh(Real(2));
    Real series = maclaurin_i(Real(0.5), Real(2));
    CHECK(abs(v - closed) < pow(Real(10), -40));
    CHECK(abs(v - series) < pow(Real(10), -40));
}

TEST_CASE("bessel I K wronskian") {
    PrecisionGuard g(80);
    for (double nu : {0.0, 0.3, 1.0, 2.5}) {
        Real x = 1;
        Real I = bessel(BesselKind::I, Real(nu), x, P);
        Real K = bessel(BesselKind::K, Real(nu), x, P);
        Real Ip = bessel_derivative(BesselKind::I, Real(nu), x, P);
        Real Kp = bessel_derivative(BesselKind::K, Real(nu), x, P);
        CHECK(abs(I * Kp - Ip * K + 1) < pow(Real(10), -40));
    }
}

TEST_CASE("bessel agrees with double precision reference") {
    for (double nu : {0.0, 0.3, 1.0, 3.7}) {
        for (double x : {0.01, 0.7, 3.0, 25.0}) {
            double j = static_cast<double>(bessel(BesselKind::J, Real(nu), Real(x), P));
            double i = static_cast<double>(bessel(BesselKind::I, Real(nu), Real(x), P));
            double k = static_cast<double>(bessel(BesselKind::K, Real(nu), Real(x), P));
            CHECK(j == doctest::Approx(boost::math::cyl_bessel_j(nu, x)).epsilon(1e-12));
            CHECK(i == doctest::Approx(boost::math::cyl_bessel_i(nu, x)).epsilon(1e-12));
            CHECK(k == doctest::Approx(boost::math::cyl_bessel_k(nu, x)).epsilon(1e-12));
        }
    }
}

TEST_CASE("bessel stable under precision increase") {
    Real a = bessel(BesselKind::K, Real(0.3), Real(7), Precision{40});
    Real b = bessel(BesselKind::K, Real(0.3), Real(7), Precision{50});
    PrecisionGuard g(60);
    CHECK(abs(a - b) < pow(Real(10), 8 - 40));
}

TEST_CASE("complex bessel matches real on the positive axis") {
    PrecisionGuard g(60);
    for (double nu : {0.0, 0.3, 2.0}) {
        Complex w(Real(1.7), Real(0));
        Complex ic = bessel_complex(BesselKind::I, Real(nu), w, P);
        Complex kc = bessel_complex(BesselKind::K, Real(nu), w, P);
        CHECK(abs(ic - bessel(BesselKind::I, Real(nu), Real(1.7), P)) < pow(Real(10), -40));
        CHECK(abs(kc - bessel(BesselKind::K, Real(nu), Real(1.7), P)) < pow(Real(10), -40));
    }
}

TEST_CASE("airy value at zero") {
    PrecisionGuard g(60);
    AiryPair a = airy(Real(0), P);
    Real expect = pow(Real(3), Real(-2) / 3) / boost::multiprecision::tgamma(Real(2) / 3);
    CHECK(abs(a.ai - expect) < pow(Real(10), -40));
}

TEST_CASE("airy ODE residual") {
    const int prec = 40;
    Real x("1.3");
    Precision hp{2 * prec + 10};
    PrecisionGuard g(hp.decimal_digits);
    Real h = pow(Real(10), -prec / 2);
    Real ap = airy(x + h, hp).ai, a0 = airy(x, hp).ai, am = airy(x - h, hp).ai;
    Real d2 = (ap - 2 * a0 + am) / (h * h);
    CHECK(abs(d2 - x * a0) < pow(Real(10), 10 - prec));
}

TEST_CASE("airy large argument against leading asymptotics") {
    PrecisionGuard g(60);
    Real x = 10;
    Real lead = exp(-Real(2) / 3 * pow(x, Real(1.5))) / (2 * sqrt(pi()) * pow(x, Real(0.25)));
    double ratio = static_cast<double>(airy(x, P).ai / lead);
    CHECK(std::abs(ratio - 1) < 0.01);
}

TEST_CASE("airy covers the required window") {
    for (double x : {-20.0, -7.3, -1.0, 0.4, 5.0, 18.0, 40.0}) {
        AiryPair a = airy(Real(x), P);
        double ai, aip;
        ai = boost::math::airy_ai(x);
        aip = boost::math::airy_ai_prime(x);
        CHECK(static_cast<double>(a.ai) == doctest::Approx(ai).epsilon(1e-11));
        CHECK(static_cast<double>(a.aip) == doctest::Approx(aip).epsilon(1e-11));
    }
}

TEST_CASE("complex airy satisfies connection formula") {
    PrecisionGuard g(60);
    const Complex w = std::polar(Real(1), 2 * pi() / 3);
    for (Complex z : {Complex(Real(3), Real(4)), Complex(Real(-30), Real(2)), Complex(Real(0.2), Real(-1))}) {
        AiryPairC a = airy_complex(z, P);
        AiryPairC b = airy_complex(w * z, P);
        AiryPairC c = airy_complex(w * w * z, P);
        Complex sum = a.ai + w * b.ai + w * w * c.ai;
        CHECK(abs(sum) < pow(Real(10), -35) * (1 + abs(a.ai)));
    }
}

TEST_CASE("bessel kernel symmetric and continuous") {
    PrecisionGuard g(60);
    Real a("0.3");
    CHECK(abs(bessel_kernel(a, Real(1), Real(2), P) - bessel_kernel(a, Real(2), Real(1), P)) <
          pow(Real(10), -40));
    Real d = bessel_kernel(a, Real(1), Real(1), P);
    Real up = bessel_kernel(a, Real(1), Real(1) + Real("1e-6"), P);
    Real dn = bessel_kernel(a, Real(1), Real(1) - Real("1e-6"), P);
    CHECK(abs(up - d) < 1e-5 * abs(d));
    CHECK(abs(dn - d) < 1e-5 * abs(d));
}

TEST_CASE("bessel kernel half order elementary form") {
    PrecisionGuard g(60);
    // J_{1/2}(x) = sqrt(2/(pi x)) sin x
    auto j = [](const Real& x) { return sqrt(2 / (pi() * x)) * sin(x); };
    auto jp = [&](const Real& x) { return sqrt(2 / (pi() * x)) * (cos(x) - sin(x) / (2 * x)); };
    Real u = 1, v = 4;
    Real su = sqrt(u), sv = sqrt(v);
    Real expect = (j(su) * sv * jp(sv) - j(sv) * su * jp(su)) / (2 * (u - v));
    CHECK(abs(bessel_kernel(Real(0.5), u, v, P) - expect) < pow(Real(10), -40));
}

TEST_CASE("airy kernel symmetry, diagonal and decay") {
    PrecisionGuard g(60);
    CHECK(abs(airy_kernel(Real(0), Real(1), P) - airy_kernel(Real(1), Real(0), P)) <
          pow(Real(10), -40));
    Real u("0.7");
    AiryPair a = airy(u, P);
    Real diag = a.aip * a.aip - u * a.ai * a.ai;
    CHECK(abs(airy_kernel(u, u, P) - diag) < pow(Real(10), -40));
    Real off = airy_kernel(u, u + Real("1e-12"), P);
    CHECK(abs(off - diag) < 1e-10);
    CHECK(airy_kernel(Real(5), Real(5), P) < 1e-6);
    AiryPair z = airy(Real(0), P);
    CHECK(abs(airy_kernel(Real(0), Real(0), P) - z.aip * z.aip) < pow(Real(10), -40));
}

TEST_CASE("bessel model matrix: determinant, jumps, asymptotics") {
    PrecisionGuard g(60);
    for (double alpha : {0.3, 0.0, 1.0, -0.4}) {
        Real a(alpha);
        Complex z(Real(2), Real(1));
        ComplexMatrix2 m = bessel_model_matrix(z, bessel_region_of(z), a, P);
        CHECK(abs(m.determinant() - Real(1)) < pow(Real(10), 10 - P.decimal_digits));

        Real eps("1e-8");
        Complex below(Real(-1), -eps), above(Real(-1), eps);
        ComplexMatrix2 plus = bessel_model_matrix(below, BesselRegion::Omega3, a, P);
        ComplexMatrix2 minus = bessel_model_matrix(above, BesselRegion::Omega2, a, P);
        ComplexMatrix2 j2 = cmat(Complex(0), Complex(-1), Complex(1), Complex(0));
        double r2 = mnorm(plus - minus * j2);
        CHECK(r2 < 1e-6);

        // Sigma_1 at arg 2pi/3, + side has the larger argument.
        Complex on1 = std::polar(Real(2), 2 * pi() / 3);
        Complex nrm = std::polar(Real(1), 2 * pi() / 3 + pi() / 2);
        ComplexMatrix2 p1 = bessel_model_matrix(on1 + eps * nrm, BesselRegion::Omega2, a, P);
        ComplexMatrix2 m1 = bessel_model_matrix(on1 - eps * nrm, BesselRegion::Omega1, a, P);
        Complex e = std::polar(Real(1), pi() * a);
        CHECK(mnorm(p1 - m1 * cmat(Complex(1), Complex(0), -e, Complex(1))) < 1e-6);

        Complex on3 = std::polar(Real(2), -2 * pi() / 3);
        Complex nrm3 = std::polar(Real(1), -2 * pi() / 3 + pi() / 2);
        ComplexMatrix2 p3 = bessel_model_matrix(on3 + eps * nrm3, BesselRegion::Omega1, a, P);
        ComplexMatrix2 m3 = bessel_model_matrix(on3 - eps * nrm3, BesselRegion::Omega3, a, P);
        CHECK(mnorm(p3 - m3 * cmat(Complex(1), Complex(0), -std::conj(e), Complex(1))) < 1e-6);
    }

    const ComplexMatrix2 Ninv =
        cmat(Complex(1), Complex(Real(0), Real(-1)), Complex(Real(0), Real(-1)), Complex(1)) /
        sqrt(Real(2));
    auto resid = [&](const Real& R) {
        Complex z(R, Real(0));
        ComplexMatrix2 m = bessel_model_matrix(z, BesselRegion::Omega1, Real("0.3"), P);
        Real sr = sqrt(R);
        ComplexMatrix2 e = cmat(Complex(exp(-sr)), Complex(0), Complex(0), Complex(exp(sr)));
        ComplexMatrix2 q = cmat(Complex(pow(R, Real(0.25))), Complex(0), Complex(0),
                                Complex(pow(R, Real(-0.25))));
        ComplexMatrix2 r = m * e * Ninv * q;
        return mnorm(r - ComplexMatrix2::Identity());
    };
    double ratio = resid(Real(100)) / resid(Real(10000));
    CHECK(ratio > 90);
    CHECK(ratio < 110);
}

TEST_CASE("bessel model matrix rejects a region that does not contain z") {
    CHECK_THROWS_AS(bessel_model_matrix(Complex(Real(1), Real(1)), BesselRegion::Omega2, Real(0), P),
                    DomainError);
}

TEST_CASE("airy model matrix: determinant, jumps, asymptotics") {
    PrecisionGuard g(60);
    Complex z(Real(1), Real(1));
    CHECK(abs(airy_model_matrix(z, P).determinant() - Real(1)) <
          pow(Real(10), 10 - P.decimal_digits));

    Real eps("1e-8");
    ComplexMatrix2 plus = airy_model_matrix(Complex(Real(-2), -eps), P);
    ComplexMatrix2 minus = airy_model_matrix(Complex(Real(-2), eps), P);
    ComplexMatrix2 j2 = cmat(Complex(0), Complex(-1), Complex(1), Complex(0));
    CHECK(mnorm(plus - minus * j2) < 1e-6);

    // The positive axis points towards the origin, so its + side is below.
    ComplexMatrix2 p4 = airy_model_matrix(Complex(Real(2), -eps), P);
    ComplexMatrix2 m4 = airy_model_matrix(Complex(Real(2), eps), P);
    CHECK(mnorm(p4 - m4 * cmat(Complex(1), Complex(-1), Complex(0), Complex(1))) < 1e-6);

    const ComplexMatrix2 Ninv =
        cmat(Complex(1), Complex(Real(0), Real(-1)), Complex(Real(0), Real(-1)), Complex(1)) /
        sqrt(Real(2));
    auto resid = [&](const Real& R) {
        Complex zz = std::polar(R, Real("0.3"));
        ComplexMatrix2 m = airy_model_matrix(zz, P);
        Complex zeta = Real(2) / 3 * pow(zz, Real(1.5));
        ComplexMatrix2 q = cmat(pow(zz, Real(0.25)), Complex(0), Complex(0), pow(zz, Real(-0.25)));
        ComplexMatrix2 e = cmat(exp(zeta), Complex(0), Complex(0), exp(-zeta));
        return mnorm(Ninv * q * m * e - ComplexMatrix2::Identity());
    };
    double ratio = resid(Real(100)) / resid(Real(10000));
    CHECK(ratio > 900);
    CHECK(ratio < 1100);
}

TEST_CASE("f2 jump across the negative axis") {
    PrecisionGuard g(40);
    Precision p{30};
    Real a("0.3"), s("0.5"), x(-1);
    Complex expect(-pow(abs(x), a) * exp(-2 * s / abs(x)), Real(0));
    double prev = 1e9;
    for (const char* e : {"1e-2", "1e-3", "1e-4"}) {
        Real eps(e);
        Complex d = f2_origin(Complex(x, eps), s, 1, a, p) - f2_origin(Complex(x, -eps), s, 1, a, p);
        double err = static_cast<double>(abs(d - expect));
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 1e-3);
}

TEST_CASE("f2 continuous in s at zero") {
    PrecisionGuard g(40);
    Precision p{30};
    Complex z(Real(1), Real(1));
    Real a("0.3");
    Complex f0 = f2_origin(z, Real(0), 1, a, p);
    double d1 = static_cast<double>(abs(f2_origin(z, Real("0.1"), 1, a, p) - f0));
    double d2 = static_cast<double>(abs(f2_origin(z, Real("0.01"), 1, a, p) - f0));
    CHECK(d2 < d1);
    CHECK(d1 / d2 > 4);
    CHECK_THROWS_AS(f2_origin(z, Real(0), 1, Real(-1.5), p), DomainError);
}

TEST_CASE("entire h matches across the negative axis") {
    {
        PrecisionGuard g(40);
        Complex up = entire_h(Complex(Real(-0.5), Real("1e-20")), Real(0), Precision{30});
        Complex dn = entire_h(Complex(Real(-0.5), Real("-1e-20")), Real(0), Precision{30});
        CHECK(abs(up - dn) < 1e-8);
    }
    PrecisionGuard g(40);
    Precision p{30};
    Real a("0.3");
    Real eps("1e-20");
    Complex up = entire_h(Complex(Real(-0.5), eps), a, p);
    Complex dn = entire_h(Complex(Real(-0.5), -eps), a, p);
    CHECK(abs(up - dn) < 1e-8);

    // Keeping +z^a/(2i sin(pi a)) next to -f2 leaves a jump of 2|x|^a.
    Complex f2u = f2_origin(Complex(Real(-0.5), eps), Real(0), 1, a, p);
    Complex f2d = f2_origin(Complex(Real(-0.5), -eps), Real(0), 1, a, p);
    Complex zu = pow(Complex(Real(-0.5), eps), a), zd = pow(Complex(Real(-0.5), -eps), a);
    Complex c(Real(0), 2 * sin(pi() * a));
    Complex jump = (-f2u + zu / c) - (-f2d + zd / c);
    CHECK(abs(jump - 2 * pow(Real(0.5), a)) < 1e-8);
}

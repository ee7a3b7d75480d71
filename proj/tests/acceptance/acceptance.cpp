// One PASS/FAIL line per acceptance criterion; exit status 0 only if all pass.
#include "p3lab/ensemble_mc.hpp"
#include "p3lab/hierarchy.hpp"
#include "p3lab/kernel_limits.hpp"
#include "p3lab/orthopoly.hpp"
#include "p3lab/painleve_extract.hpp"
#include "p3lab/specfun.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace p3lab;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

Outcome identities() {
    double worst = 0;
    for (int n : {2, 3, 4})
        for (int k : {1, 2})
            for (const char* t : {"0.02", "0.05"}) {
                PrecisionGuard g(60);
                GueLueResiduals r = pgue_plue_residual(n, k, Real("0.3"), Real(t), Precision{60});
                worst = std::max({worst, static_cast<double>(abs(r.even)), static_cast<double>(abs(r.odd))});
            }
    return {worst < 1e-45, "max residual " + sci(worst) + " over 12 cases (< 1e-45)"};
}

Outcome differential_identity() {
    PerturbedWeight w;
    {
        PrecisionGuard g(60);
        w = PerturbedWeight{Ensemble::pLUE, 5, 1, Real("0.3"), Real("0.1"), Precision{60}};
    }
    DiffIdentityResiduals d = diff_identity_residual(w, 5);
    const double a = static_cast<double>(abs(d.kernel_form)), b = static_cast<double>(abs(d.residue_form));
    return {a < 1e-10 && b < 1e-10, "kernel form " + sci(a) + ", residue form " + sci(b) + " (< 1e-10)"};
}

Outcome initial_value() {
    bool pass = true;
    std::ostringstream os;
    const std::vector<double> s{1e-2};
    for (double alpha : {0.0, 0.5}) {
        const double r0 = r_initial(alpha);
        const double r32 = extract_r(1, alpha, s, 32)[0], r64 = extract_r(1, alpha, s, 64)[0];
        const double r128 = extract_r(1, alpha, s, 128)[0], r256 = extract_r(1, alpha, s, 256)[0];
        // Finite-n error measured against the 1/n extrapolation of the two largest sizes.
        const double limit = 2 * r256 - r128;
        const double ratio = std::abs(r32 - limit) / std::abs(r64 - limit);
        const bool ok = std::abs(r64 - r0) < 0.02 && ratio >= 1.5 && ratio <= 2.5;
        pass = pass && ok;
        os << "alpha=" << alpha << ": |r64 - r(0)| = " << sci(std::abs(r64 - r0)) << ", ratio " << sci(ratio)
           << (ok ? "" : " [fails]") << "; ";
    }
    return {pass, os.str() + "need |r64 - r(0)| < 0.02 and ratio in [1.5, 2.5]"};
}

Outcome piii_residual() {
    const TranscendentTable T = extract_table(1, 0.0, log_grid(0.2, 30, 48), {32, 64});
    const double e32 = piii_residual_extracted(T, 0).max_abs_on(0.5, 5);
    const double e64 = piii_residual_extracted(T, 1).max_abs_on(0.5, 5);
    return {e32 / e64 >= 1.5, "sup residual n=32 " + sci(e32) + ", n=64 " + sci(e64) + ", ratio " + sci(e32 / e64) +
                                  " (>= 1.5)"};
}

Outcome large_s() {
    const std::vector<double> s = log_grid(300, 50000, 12);
    const LargeSFit f1 = verify_large_s(extract_table(1, 0.0, s, {256, 512}), 20, 200);
    const LargeSFit f2 = verify_large_s(extract_table(2, 0.0, s, {256, 512}), 20, 200);
    const bool ok1 = std::abs(f1.exponent - 1.0 / 3) <= 0.05 && std::abs(f1.coefficient / -4.0 - 1) <= 0.1;
    const bool ok2 = std::abs(f2.exponent - 3.0 / 5) <= 0.05;
    return {ok1 && ok2, "k=1 exponent " + sci(f1.exponent) + " coefficient " + sci(f1.coefficient) +
                            "; k=2 exponent " + sci(f2.exponent)};
}

Outcome bessel_limit() {
    const std::vector<double> g{-5, -2, -1, -0.5, -0.1};
    const LimitResidual r = bessel_limit_residual(64, 1, 0.0, 1e-3, g);
    // n-doubling is measured where the finite-n error dominates the s-effect.
    const LimitResidual p32 = bessel_limit_residual(32, 1, 0.0, 1e-10, g);
    const LimitResidual p64 = bessel_limit_residual(64, 1, 0.0, 1e-10, g);
    const LimitResidual p128 = bessel_limit_residual(128, 1, 0.0, 1e-10, g);
    const double rel = r.sup / r.max_limit;
    const bool ok = rel < 0.05 && p64.sup < p32.sup && p128.sup < p64.sup;
    return {ok, "s=1e-3: " + sci(100 * rel) + "% of max J; plateau sup " + sci(p32.sup) + " -> " + sci(p64.sup) +
                    " -> " + sci(p128.sup) + " (n = 32, 64, 128)"};
}

Outcome airy_limit() {
    const std::vector<double> g{-2, -1, 0, 1, 2};
    std::vector<double> sup;
    for (double s : {100.0, 300.0, 1000.0}) sup.push_back(airy_limit_residual(airy_default_n(s), 1, 0.0, s, g).sup);
    return {sup[1] < sup[0] && sup[2] < sup[1],
            "sup residual " + sci(sup[0]) + ", " + sci(sup[1]) + ", " + sci(sup[2]) + " at s = 100, 300, 1000"};
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

Outcome model_matrices() {
    const Precision P{60};
    PrecisionGuard guard(60);
    const Real eps("1e-8"), alpha("0.3");
    double det = 0, jump = 0;
    const ComplexMatrix2 J2 = cmat(Complex(0), Complex(-1), Complex(1), Complex(0));

    for (const Complex& z : {Complex(Real(2), Real(1)), Complex(Real(-1), Real(2)), Complex(Real(-3), Real(-1))}) {
        det = std::max(det, static_cast<double>(abs(bessel_model_matrix(z, bessel_region_of(z), alpha, P).determinant() - Real(1))));
        det = std::max(det, static_cast<double>(abs(airy_model_matrix(z, P).determinant() - Real(1))));
    }
    // Bessel: + side of the negative axis is below; the ray at 2pi/3 has its + side at larger argument.
    jump = std::max(jump, mnorm(bessel_model_matrix(Complex(Real(-1), -eps), BesselRegion::Omega3, alpha, P) -
                                bessel_model_matrix(Complex(Real(-1), eps), BesselRegion::Omega2, alpha, P) * J2));
    const Complex e = std::polar(Real(1), pi() * alpha);
    const Complex on1 = std::polar(Real(2), 2 * pi() / 3), n1 = std::polar(Real(1), 2 * pi() / 3 + pi() / 2);
    jump = std::max(jump, mnorm(bessel_model_matrix(on1 + eps * n1, BesselRegion::Omega2, alpha, P) -
                                bessel_model_matrix(on1 - eps * n1, BesselRegion::Omega1, alpha, P) *
                                    cmat(Complex(1), Complex(0), -e, Complex(1))));
    const Complex on3 = std::polar(Real(2), -2 * pi() / 3), n3 = std::polar(Real(1), -2 * pi() / 3 + pi() / 2);
    jump = std::max(jump, mnorm(bessel_model_matrix(on3 + eps * n3, BesselRegion::Omega1, alpha, P) -
                                bessel_model_matrix(on3 - eps * n3, BesselRegion::Omega3, alpha, P) *
                                    cmat(Complex(1), Complex(0), -std::conj(e), Complex(1))));
    jump = std::max(jump, mnorm(airy_model_matrix(Complex(Real(-2), -eps), P) -
                                airy_model_matrix(Complex(Real(-2), eps), P) * J2));
    jump = std::max(jump, mnorm(airy_model_matrix(Complex(Real(2), -eps), P) -
                                airy_model_matrix(Complex(Real(2), eps), P) *
                                    cmat(Complex(1), Complex(-1), Complex(0), Complex(1))));

    const ComplexMatrix2 Ninv =
        cmat(Complex(1), Complex(Real(0), Real(-1)), Complex(Real(0), Real(-1)), Complex(1)) / sqrt(Real(2));
    auto bessel_err = [&](const Real& R) {
        const Real sr = sqrt(R);
        ComplexMatrix2 m = bessel_model_matrix(Complex(R, Real(0)), BesselRegion::Omega1, alpha, P);
        ComplexMatrix2 ex = cmat(Complex(exp(-sr)), Complex(0), Complex(0), Complex(exp(sr)));
        ComplexMatrix2 q = cmat(Complex(pow(R, Real(0.25))), Complex(0), Complex(0), Complex(pow(R, Real(-0.25))));
        return mnorm(m * ex * Ninv * q - ComplexMatrix2::Identity());
    };
    auto airy_err = [&](const Real& R) {
        const Complex z = std::polar(R, Real("0.3"));
        const Complex zeta = Real(2) / 3 * pow(z, Real(1.5));
        ComplexMatrix2 q = cmat(pow(z, Real(0.25)), Complex(0), Complex(0), pow(z, Real(-0.25)));
        ComplexMatrix2 ex = cmat(exp(zeta), Complex(0), Complex(0), exp(-zeta));
        return mnorm(Ninv * q * airy_model_matrix(z, P) * ex - ComplexMatrix2::Identity());
    };
    const double sb = std::log(bessel_err(Real(10000)) / bessel_err(Real(100))) / std::log(100.0);
    const double sa = std::log(airy_err(Real(10000)) / airy_err(Real(100))) / std::log(100.0);
    const bool ok = det < 1e-12 && jump < 1e-6 && std::abs(sb / -1.0 - 1) <= 0.1 && std::abs(sa / -1.5 - 1) <= 0.1;
    return {ok, "|det - 1| " + sci(det) + ", jump " + sci(jump) + ", decay slopes " + sci(sb) + " (Bessel, -1) and " +
                    sci(sa) + " (Airy, -1.5)"};
}

// Hand-derived constant tables for k = 1, 2, 3 at alpha = 0.3.
Outcome hierarchy_suite() {
    const double a = 0.3;
    bool tables = true;
    auto close = [](double x, double y) { return std::abs(x - y) <= 1e-12 * std::max(1.0, std::abs(y)); };
    {
        HierarchyConstants c = hierarchy_constants(1, a);
        tables = tables && close(c.tau[0], 64) && close(c.tau[1], -16 * a) && close(c.z0, -1) && c.beta.empty() &&
                 close(c.g1, 1.5) && close(c.g2, 0.375) && close(c.eta, 2.0 / 3) && close(c.c2, std::pow(1.5, 2.0 / 3));
    }
    {
        HierarchyConstants c = hierarchy_constants(2, a);
        const double z0 = -std::pow(1.5, 0.4), m = -z0;
        const double b0 = -std::pow(m, -1.5);
        tables = tables && close(c.tau[0], 4096) && close(c.tau[1], 0) && close(c.tau[2], 64 * 2 * a) &&
                 close(c.z0, z0) && c.beta.size() == 1 && close(c.beta[0], b0) && close(c.g1, b0 - 1.5 * z0) &&
                 close(c.g2, 0.375 * z0 * z0 - 1.5 * z0 * b0) && close(c.eta, 0.8) &&
                 close(c.c2, std::pow(1.5, 2.0 / 3) * std::pow(m, -1 - 4.0 / 3) * 2.5);
    }
    {
        HierarchyConstants c = hierarchy_constants(3, a);
        const double z0 = -std::pow(15.0 / 8, 2.0 / 7), m = -z0;
        const double b0 = std::pow(m, -1.5), b1 = -1.5 * std::pow(m, -2.5);
        tables = tables && close(c.tau[0], 16384.0 * 9) && close(c.tau[1], 0) && close(c.tau[2], 0) &&
                 close(c.tau[3], -256 * 3 * a) && close(c.z0, z0) && c.beta.size() == 2 && close(c.beta[0], b0) &&
                 close(c.beta[1], b1) && close(c.g1, b1 - 1.5 * z0) && close(c.g2, 0.375 * z0 * z0 + b0 - 1.5 * z0 * b1) &&
                 close(c.eta, 6.0 / 7) && close(c.c2, std::pow(1.5, 2.0 / 3) * std::pow(m, -3.0) * 4.375);
    }
    // End-to-end k = 1 chain: a 7-point stencil differentiates twice with error O(h^4) or better.
    std::vector<double> err;
    for (int m : {41, 81, 161}) {
        HierarchyCheckK1 h = hierarchy_check_k1(a, uniform_nodes(1.0, 2.5, m), 7);
        err.push_back(std::max({h.piii.max_abs(), h.system0.max_abs(), h.system1.max_abs(), h.lenard_l1.max_abs(),
                                h.lenard_l2.max_abs()}));
    }
    const double o1 = std::log2(err[0] / err[1]), o2 = std::log2(err[1] / err[2]);
    const bool conv = o1 >= 3.5 && o2 >= 3.5;
    return {tables && conv, std::string("tables k<=3 ") + (tables ? "match" : "MISMATCH") + "; chain residual " +
                                sci(err[0]) + " -> " + sci(err[1]) + " -> " + sci(err[2]) + ", observed order " +
                                sci(o1) + ", " + sci(o2) + " (>= 3.5)"};
}

Outcome monte_carlo() {
    ChainOptions o;
    o.sweeps = 100000;
    o.seed = 2026;
    const MCParams p{8, 1, 0.0, 0.01};
    const DensityComparison D = density_compare(run_chains(p, o, 4), OnePointDensity(p));
    std::vector<double> frac;
    for (double t : {0.0, 0.005, 0.02}) frac.push_back(hard_edge_fraction(run_chains({8, 1, 0.0, t}, o, 2), 0.02));
    const bool ok = D.p_value > 0.01 && frac[1] < frac[0] && frac[2] < frac[1];
    return {ok, "p = " + sci(D.p_value) + " (chi2 " + sci(D.chi2) + ", dof " + std::to_string(D.dof) +
                    "); mass below 0.02: " + sci(frac[0]) + ", " + sci(frac[1]) + ", " + sci(frac[2])};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> all{
        {1, "finite-n pGUE/pLUE identities", 120, identities},
        {2, "differential identity", 30, differential_identity},
        {3, "initial value r(0)", 600, initial_value},
        {4, "PIII residual of extracted l_1", 900, piii_residual},
        {5, "large-s law", 1200, large_s},
        {6, "Bessel hard-edge limit", 600, bessel_limit},
        {7, "Airy limit", 1200, airy_limit},
        {8, "model matrices", 60, model_matrices},
        {9, "hierarchy structural suite", 120, hierarchy_suite},
        {10, "Monte Carlo cross-validation", 600, monte_carlo},
    };
    int failed = 0;
    for (const Criterion& c : all) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = dt <= c.budget_s;
        const bool pass = o.pass && in_time;
        failed += !pass;
        std::printf("%s criterion %d: %s: %s [%.1f s of %.0f s]\n", pass ? "PASS" : "FAIL", c.id, c.name,
                    o.detail.c_str(), dt, c.budget_s);
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}

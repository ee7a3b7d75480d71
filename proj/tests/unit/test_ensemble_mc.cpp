#include "doctest.h"
#include "p3lab/ensemble_mc.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>

using namespace p3lab;

namespace {

ChainOptions opts(long sweeps, std::uint64_t seed = 7) {
    ChainOptions o;
    o.sweeps = sweeps;
    o.seed = seed;
    return o;
}

}  // namespace

TEST_CASE("log joint density: hand values and invariances") {
    MCParams p{2, 1, 0.0, 0.0};
    CHECK(log_joint_density({1, 2}, p) == doctest::Approx(-6));
    MCParams q{4, 2, 0.3, 0.05};
    std::vector<double> x{0.4, 1.7, 0.9, 2.6};
    std::vector<double> y{2.6, 0.4, 0.9, 1.7};
    CHECK(log_joint_density(x, q) == doctest::Approx(log_joint_density(y, q)).epsilon(1e-14));
    MCParams one{1, 2, 0.3, 0.05};
    const double x0 = 0.7;
    CHECK(log_joint_density({x0}, one) == doctest::Approx(0.3 * std::log(x0) - (x0 + std::pow(0.05 / x0, 2))));
    CHECK(log_joint_density({1, 1}, p) == -std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(log_joint_density({-1, 1}, p), DomainError);
}

TEST_CASE("metropolis rule: detailed balance on a two-state target") {
    Rng rng(2026);
    const double pa = 1, pb = 0.3;
    int state = 0;
    long from_a = 0, acc_a = 0, from_b = 0, acc_b = 0, time_b = 0;
    const long steps = 1000000;
    for (long i = 0; i < steps; ++i) {
        if (state == 0) {
            ++from_a;
            if (metropolis_accept(std::log(pb / pa), rng)) ++acc_a, state = 1;
        } else {
            ++from_b;
            if (metropolis_accept(std::log(pa / pb), rng)) ++acc_b, state = 0;
        }
        time_b += state;
    }
    const double rate_a = static_cast<double>(acc_a) / from_a;
    const double rate_b = static_cast<double>(acc_b) / from_b;
    CHECK(rate_b == 1);
    // Flow a -> b over flow b -> a per visit equals pi(b)/pi(a).
    const double sigma = std::sqrt(rate_a * (1 - rate_a) / from_a);
    CHECK(std::abs(rate_a / rate_b - pb / pa) < 3 * sigma);
    const double occ = static_cast<double>(time_b) / (steps - time_b);
    CHECK(occ == doctest::Approx(pb / pa).epsilon(0.02));
}

TEST_CASE("rng: reproducible streams") {
    Rng a(11, 3), b(11, 3), c(11, 4);
    for (int i = 0; i < 5; ++i) {
        double u = a.uniform();
        CHECK(u == b.uniform());
        CHECK(u != c.uniform());
    }
    MCParams p{4, 1, 0.0, 0.01};
    ChainResult r1 = mh_chain(p, opts(2000));
    ChainResult r2 = mh_chain(p, opts(2000));
    ChainResult r3 = mh_chain(p, opts(2000, 8));
    CHECK(r1.samples == r2.samples);
    CHECK(r1.samples != r3.samples);
    std::vector<ChainResult> many = run_chains(p, opts(2000), 3);
    REQUIRE(many.size() == 3);
    CHECK(many[0].samples == r1.samples);
    CHECK(many[1].samples != many[0].samples);
}

TEST_CASE("chain: tuning, bookkeeping, and failure modes") {
    MCParams p{8, 1, 0.0, 0.01};
    ChainResult r = mh_chain(p, opts(5000));
    CHECK(r.acceptance_rate > 0.1);
    CHECK(r.acceptance_rate < 0.9);
    CHECK(std::abs(r.acceptance_rate - 0.3) < 0.1);
    CHECK(r.kept == 4000);
    CHECK(r.samples.size() == 4000u * 8);
    CHECK(r.max_cache_drift < 1e-10);
    for (double x : r.samples) CHECK(x > 0);

    ChainOptions wild = opts(5000);
    wild.auto_tune = false;
    wild.proposal_scale = 1e3;
    wild.zero_accept_window = 50;
    CHECK_THROWS_AS(mh_chain(p, wild), McmcError);
    ChainOptions bad = opts(10);
    bad.proposal_scale = 0;
    CHECK_THROWS_AS(mh_chain(p, bad), DomainError);
}

TEST_CASE("one-point density: total mass and the classical Laguerre kernel") {
    MCParams p{6, 1, 0.4, 0.0};
    OnePointDensity rho(p);
    CHECK(rho.mass(0, std::numeric_limits<double>::infinity()) == doctest::Approx(6).epsilon(1e-10));
    // K_n(x,x) = n sum_j j!/Gamma(j+alpha+1) L_j^alpha(nx)^2 (nx)^alpha e^{-nx}.
    for (double x : {0.05, 0.7, 2.5}) {
        const double y = p.n * x;
        // Boost's associated Laguerre takes an integer order, so recur directly.
        double s = 0, Lm = 0, L = 1;
        for (int j = 0; j < 6; ++j) {
            s += std::exp(boost::math::lgamma(j + 1.0) - boost::math::lgamma(j + 1.4)) * L * L;
            const double Lp = ((2 * j + 1.4 - y) * L - (j + 0.4) * Lm) / (j + 1);
            Lm = L;
            L = Lp;
        }
        CHECK(rho(x) == doctest::Approx(p.n * s * std::pow(y, 0.4) * std::exp(-y)).epsilon(1e-10));
    }
    std::vector<double> e = rho.quantile_edges(10);
    REQUIRE(e.size() == 11);
    for (int b = 0; b < 10; ++b) CHECK(rho.mass(e[b], e[b + 1]) == doctest::Approx(0.6).epsilon(1e-3));
}

TEST_CASE("histograms agree with K_n(x,x)") {
    for (double t : {0.01, 0.0}) {
        MCParams p{8, 1, 0.0, t};
        std::vector<ChainResult> ch = run_chains(p, opts(40000, 99), 4);
        OnePointDensity rho(p);
        DensityComparison D = density_compare(ch, rho);
        double total = 0;
        for (double c : D.counts) total += c;
        CHECK(total == D.samples);
        CHECK(D.samples == 4L * 32000 * 8);
        CHECK(D.dof == 19);
        CHECK(D.p_value > 0.01);
        CHECK_THROWS_AS(density_compare(ch, rho, 20, 100, 10000000), DomainError);
    }
}

TEST_CASE("hard-edge mass falls as the pole grows") {
    double prev = 1;
    for (double t : {0.0, 0.005, 0.02}) {
        MCParams p{8, 1, 0.0, t};
        std::vector<ChainResult> ch = run_chains(p, opts(20000, 5), 2);
        double f = hard_edge_fraction(ch, 0.02);
        double exact = OnePointDensity(p).mass(0, 0.02) / p.n;
        CHECK(f < prev);
        CHECK(f == doctest::Approx(exact).epsilon(0.25));
        prev = f;
    }
}

#pragma once

#include "p3lab/orthopoly.hpp"

#include <boost/random/mersenne_twister.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace p3lab {

struct MCParams {
    int n = 1;
    int k = 1;
    double alpha = 0;
    double t = 0;

    void validate() const;
};

// 2 sum_{i<j} log|x_j - x_i| + sum_j [alpha log x_j - n (x_j + (t/x_j)^k)]; -inf for coincident points.
double log_joint_density(const std::vector<double>& x, const MCParams& p);

// mt19937_64 seeded through seed_seq{seed low, seed high, stream}; uniforms and normals from
// Boost.Random, whose algorithms are fixed in the source so streams agree across platforms.
class Rng {
public:
    static constexpr const char* algorithm = "mt19937_64+seed_seq(seed,stream)+boost-uniform01/normal v1";

    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    double uniform();  // [0, 1)
    double normal();

private:
    boost::random::mt19937_64 eng_;
};

// Metropolis rule: accept with probability min(1, exp(log_ratio)).
bool metropolis_accept(double log_ratio, Rng& rng);

class McmcError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ChainOptions {
    long sweeps = 100000;
    double burn_in_fraction = 0.2;
    double proposal_scale = 0.5;  // standard deviation of the log-space step
    bool auto_tune = true;
    double target_acceptance = 0.3;
    int thin = 1;
    int check_every = 100;          // sweeps between full recomputations of the cached log density
    long zero_accept_window = 1000;  // sweeps without any acceptance before giving up
    std::uint64_t seed = 1;
};

struct ChainResult {
    int n = 0;
    int chain = 0;
    std::uint64_t seed = 0;
    std::vector<double> samples;  // post-burn-in configurations, n values per row
    long kept = 0;
    double acceptance_rate = 0;  // post-burn-in
    double proposal_scale = 0;   // after tuning
    double max_cache_drift = 0;  // largest |cached - recomputed| log density seen

    double at(long row, int i) const { return samples[row * n + i]; }
};

// Metropolis-within-Gibbs with per-coordinate Gaussian steps in log x.
ChainResult mh_chain(const MCParams& p, const ChainOptions& opt, int chain = 0);

// Independent chains (stream = chain index), run concurrently; results in chain order.
std::vector<ChainResult> run_chains(const MCParams& p, const ChainOptions& opt, int chains);

// Exact one-point function K_n(x,x) of the finite-n ensemble.
class OnePointDensity {
public:
    explicit OnePointDensity(const MCParams& p);

    double operator()(double x) const;
    // int_a^b K_n(x,x) dx; b may be +inf.
    double mass(double a, double b) const;
    // bins + 1 edges from 0 to +inf with equal expected mass.
    std::vector<double> quantile_edges(int bins) const;

private:
    MCParams p_;
    OPSystem<long double> sys_;
};

std::vector<double> histogram(const std::vector<ChainResult>& chains, const std::vector<double>& edges);

struct DensityComparison {
    std::vector<double> edges;
    std::vector<double> counts;
    std::vector<double> expected;
    // Batch-means Hotelling statistic for the bin frequencies (asymptotically chi^2 with dof degrees).
    double chi2 = 0;
    int dof = 0;
    double p_value = 0;
    long samples = 0;
    int batches = 0;
};

// Requires at least min_samples eigenvalue samples in total.
DensityComparison density_compare(const std::vector<ChainResult>& chains, const OnePointDensity& rho, int bins = 20,
                                  int batches = 100, long min_samples = 100000);

// Fraction of eigenvalue samples below the cutoff.
double hard_edge_fraction(const std::vector<ChainResult>& chains, double cutoff);

}  // namespace p3lab

#include "p3lab/ensemble_mc.hpp"

#include <Eigen/Cholesky>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/seed_seq.hpp>
#include <boost/random/uniform_01.hpp>

#include <cmath>
#include <future>
#include <limits>

namespace p3lab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_one(double x, const MCParams& p) {
    return p.alpha * std::log(x) - p.n * (x + (p.t > 0 ? std::pow(p.t / x, p.k) : 0.0));
}

// Change in log density when x[i] moves to y.
double delta_log_density(const std::vector<double>& x, int i, double y, const MCParams& p) {
    double d = log_one(y, p) - log_one(x[i], p);
    for (int j = 0; j < static_cast<int>(x.size()); ++j) {
        if (j == i) continue;
        const double a = std::abs(y - x[j]);
        if (a == 0) return kNegInf;
        d += 2 * (std::log(a) - std::log(std::abs(x[i] - x[j])));
    }
    return d;
}

}  // namespace

void MCParams::validate() const {
    if (n < 1) throw DomainError("MCParams: n must be positive");
    if (k < 1) throw DomainError("MCParams: k must be positive");
    if (!(alpha > -1)) throw DomainError("MCParams: alpha must exceed -1");
    if (!(t >= 0)) throw DomainError("MCParams: t must be non-negative");
}

double log_joint_density(const std::vector<double>& x, const MCParams& p) {
    if (static_cast<int>(x.size()) != p.n) throw DomainError("log_joint_density: expected n points");
    double v = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0)) throw DomainError("log_joint_density: points must be positive");
        v += log_one(x[i], p);
        for (size_t j = 0; j < i; ++j) {
            const double a = std::abs(x[i] - x[j]);
            if (a == 0) return kNegInf;
            v += 2 * std::log(a);
        }
    }
    return v;
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
    boost::random::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                                static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    eng_.seed(seq);
}

double Rng::uniform() { return boost::random::uniform_01<double>()(eng_); }

double Rng::normal() { return boost::random::normal_distribution<double>()(eng_); }

bool metropolis_accept(double log_ratio, Rng& rng) {
    if (log_ratio >= 0) return true;
    if (!(log_ratio > kNegInf)) return false;
    return std::log(rng.uniform()) < log_ratio;
}

ChainResult mh_chain(const MCParams& p, const ChainOptions& opt, int chain) {
    p.validate();
    if (!(opt.proposal_scale > 0)) throw DomainError("mh_chain: proposal_scale must be positive");
    if (opt.sweeps < 1 || opt.thin < 1) throw DomainError("mh_chain: sweeps and thin must be positive");
    if (!(opt.burn_in_fraction >= 0 && opt.burn_in_fraction < 1))
        throw DomainError("mh_chain: burn-in fraction must lie in [0, 1)");
    const long burn = static_cast<long>(opt.burn_in_fraction * opt.sweeps);

    Rng rng(opt.seed, static_cast<std::uint64_t>(chain));
    ChainResult out;
    out.n = p.n;
    out.chain = chain;
    out.seed = opt.seed;

    // Start on distinct points spread over the bulk of the Laguerre law.
    std::vector<double> x(p.n);
    for (int i = 0; i < p.n; ++i) x[i] = 4.0 * (i + 0.5) / p.n;
    double ld = log_joint_density(x, p);

    double scale = opt.proposal_scale;
    long accepted = 0, proposed = 0, tune_acc = 0, tune_prop = 0, since_accept = 0;
    out.samples.reserve(static_cast<size_t>((opt.sweeps - burn) / opt.thin + 1) * p.n);
    for (long sweep = 0; sweep < opt.sweeps; ++sweep) {
        bool any = false;
        for (int i = 0; i < p.n; ++i) {
            const double y = x[i] * std::exp(scale * rng.normal());
            // Target in log x carries the Jacobian x.
            const double d = delta_log_density(x, i, y, p);
            const double lr = d + std::log(y / x[i]);
            const bool acc = metropolis_accept(lr, rng);
            if (acc) {
                x[i] = y;
                ld += d;
                any = true;
            }
            if (sweep < burn) {
                tune_acc += acc;
                ++tune_prop;
            } else {
                accepted += acc;
                ++proposed;
            }
        }
        since_accept = any ? 0 : since_accept + 1;
        if (since_accept >= opt.zero_accept_window)
            throw McmcError("mh_chain: no move accepted in " + std::to_string(since_accept) + " sweeps (chain " +
                            std::to_string(chain) + ", scale " + std::to_string(scale) + ")");
        if (opt.auto_tune && sweep < burn && tune_prop >= 50 * p.n) {
            const double rate = static_cast<double>(tune_acc) / tune_prop;
            scale *= std::exp(2 * (rate - opt.target_acceptance));
            tune_acc = tune_prop = 0;
        }
        if ((sweep + 1) % opt.check_every == 0) {
            const double fresh = log_joint_density(x, p);
            out.max_cache_drift = std::max(out.max_cache_drift, std::abs(fresh - ld));
            if (!(std::abs(fresh - ld) <= 1e-10 * std::max(1.0, std::abs(fresh))))
                throw McmcError("mh_chain: cached log density drifted from recomputation");
            ld = fresh;
        }
        if (sweep >= burn && (sweep - burn) % opt.thin == 0) {
            out.samples.insert(out.samples.end(), x.begin(), x.end());
            ++out.kept;
        }
    }
    out.acceptance_rate = proposed ? static_cast<double>(accepted) / proposed : 0;
    out.proposal_scale = scale;
    return out;
}

std::vector<ChainResult> run_chains(const MCParams& p, const ChainOptions& opt, int chains) {
    if (chains < 1) throw DomainError("run_chains: need at least one chain");
    std::vector<std::future<ChainResult>> jobs;
    for (int c = 0; c < chains; ++c) jobs.push_back(std::async(std::launch::async, [&, c] { return mh_chain(p, opt, c); }));
    std::vector<ChainResult> out;
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

OnePointDensity::OnePointDensity(const MCParams& p) : p_(p) {
    p.validate();
    const Precision prec{40};
    PrecisionGuard g(prec.decimal_digits);
    PerturbedWeight w{Ensemble::pLUE, p.n, p.k, Real(p.alpha), Real(p.t), prec};
    sys_ = discretized_op_system<long double>(w, p.n);
}

double OnePointDensity::operator()(double x) const {
    if (!(x > 0)) return 0;
    const long double v = x;
    return static_cast<double>(cd_kernel(sys_, p_.n, v, v));
}

double OnePointDensity::mass(double a, double b) const {
    // Double-exponential rule: the density behaves like x^alpha at the hard edge.
    static boost::math::quadrature::tanh_sinh<double> ts;
    auto f = [this](double x) { return (*this)(x); };
    return ts.integrate(f, a, b, 1e-12);
}

std::vector<double> OnePointDensity::quantile_edges(int bins) const {
    if (bins < 2) throw DomainError("quantile_edges: need at least two bins");
    const double total = p_.n;
    // Cumulative mass on a grid that is dense near the hard edge.
    const int N = 4000;
    const double X = 12;
    std::vector<double> xs(N + 1), cdf(N + 1, 0.0);
    for (int i = 0; i <= N; ++i) xs[i] = X * (static_cast<double>(i) / N) * (static_cast<double>(i) / N);
    auto f = [this](double x) { return (*this)(x); };
    for (int i = 1; i <= N; ++i)
        cdf[i] = cdf[i - 1] + boost::math::quadrature::gauss<double, 10>::integrate(f, xs[i - 1], xs[i]) / total;
    std::vector<double> edges{0.0};
    int j = 1;
    for (int b = 1; b < bins; ++b) {
        const double q = static_cast<double>(b) / bins;
        while (j < N && cdf[j] < q) ++j;
        const double f = (q - cdf[j - 1]) / (cdf[j] - cdf[j - 1]);
        edges.push_back(xs[j - 1] + f * (xs[j] - xs[j - 1]));
    }
    edges.push_back(std::numeric_limits<double>::infinity());
    return edges;
}

std::vector<double> histogram(const std::vector<ChainResult>& chains, const std::vector<double>& edges) {
    std::vector<double> counts(edges.size() - 1, 0.0);
    for (const ChainResult& c : chains)
        for (double x : c.samples) {
            auto it = std::upper_bound(edges.begin(), edges.end(), x);
            const long b = static_cast<long>(it - edges.begin()) - 1;
            if (b >= 0 && b < static_cast<long>(counts.size())) counts[b] += 1;
        }
    return counts;
}

DensityComparison density_compare(const std::vector<ChainResult>& chains, const OnePointDensity& rho, int bins,
                                  int batches, long min_samples) {
    if (chains.empty()) throw DomainError("density_compare: no chains");
    DensityComparison D;
    for (const ChainResult& c : chains) D.samples += static_cast<long>(c.samples.size());
    if (D.samples < min_samples)
        throw DomainError("density_compare: insufficient samples (" + std::to_string(D.samples) + ")");
    const int n = chains.front().n;
    const int per_chain = std::max(2, batches / static_cast<int>(chains.size()));
    D.edges = rho.quantile_edges(bins);
    D.counts = histogram(chains, D.edges);
    for (int b = 0; b < bins; ++b) D.expected.push_back(rho.mass(D.edges[b], D.edges[b + 1]) / n * D.samples);

    // Bin frequencies per batch, dropping the last bin (frequencies sum to one).
    const int m = bins - 1;
    std::vector<Eigen::VectorXd> dev;
    for (const ChainResult& c : chains) {
        const long rows = c.kept / per_chain;
        if (rows < 1) throw DomainError("density_compare: chain too short for the batch count");
        for (int q = 0; q < per_chain; ++q) {
            Eigen::VectorXd f = Eigen::VectorXd::Zero(m);
            for (long r = q * rows; r < (q + 1) * rows; ++r)
                for (int i = 0; i < n; ++i) {
                    const double x = c.at(r, i);
                    const long b = static_cast<long>(std::upper_bound(D.edges.begin(), D.edges.end(), x) - D.edges.begin()) - 1;
                    if (b < m) f[b] += 1;
                }
            f /= static_cast<double>(rows * n);
            for (int b = 0; b < m; ++b) f[b] -= D.expected[b] / D.samples;
            dev.push_back(f);
        }
    }
    const int B = static_cast<int>(dev.size());
    if (B <= m) throw DomainError("density_compare: need more batches than bins");
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(m);
    for (const auto& v : dev) mean += v;
    mean /= B;
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(m, m);
    for (const auto& v : dev) S += (v - mean) * (v - mean).transpose();
    S /= B - 1;
    D.chi2 = B * mean.dot(S.ldlt().solve(mean));
    D.dof = m;
    D.batches = B;
    const double F = (B - m) / (static_cast<double>(m) * (B - 1)) * D.chi2;
    boost::math::fisher_f_distribution<double> dist(m, B - m);
    D.p_value = boost::math::cdf(boost::math::complement(dist, F));
    return D;
}

double hard_edge_fraction(const std::vector<ChainResult>& chains, double cutoff) {
    long below = 0, total = 0;
    for (const ChainResult& c : chains)
        for (double x : c.samples) {
            below += x < cutoff;
            ++total;
        }
    if (total == 0) throw DomainError("hard_edge_fraction: no samples");
    return static_cast<double>(below) / total;
}

}  // namespace p3lab

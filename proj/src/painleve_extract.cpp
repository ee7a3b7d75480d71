#include "p3lab/painleve_extract.hpp"

#include "p3lab/equilibrium.hpp"
#include "p3lab/orthopoly.hpp"

#include <Eigen/QR>

#include <cmath>

namespace p3lab {

namespace {

Real scaling_factor(int n, int k, ScalingMode mode, const Real& c1) {
    const Real C = mode == ScalingMode::with_c1 ? promote(c1) : Real(1);
    return C * pow(Real(n), Real(2 * k + 1) / k) / pow(Real(2), Real(1) / k);
}

void check_grid(const std::vector<double>& s, int stencil, int fit_degree) {
    if (fit_degree < 1 || stencil <= fit_degree) throw DomainError("stencil must exceed the fit degree");
    if (static_cast<int>(s.size()) < std::max(stencil, 8)) throw DomainError("s-grid has too few points");
    for (size_t i = 0; i < s.size(); ++i) {
        if (!(s[i] > 0)) throw DomainError("s-grid must be positive");
        if (i > 0 && !(s[i] > s[i - 1])) throw DomainError("s-grid must be increasing");
    }
}

}  // namespace

std::string to_string(ScalingMode m) { return m == ScalingMode::with_c1 ? "with_c1" : "without_c1"; }

ScalingMode parse_scaling_mode(const std::string& s) {
    if (s == "with_c1" || s == "with-c1") return ScalingMode::with_c1;
    if (s == "without_c1" || s == "without-c1") return ScalingMode::without_c1;
    throw DomainError("unknown scaling mode '" + s + "'");
}

double laguerre_c1() {
    static const double c1 = [] {
        PrecisionGuard g(40);
        return static_cast<double>(laguerre_equilibrium(Precision{40}).c1());
    }();
    return c1;
}

Real s_to_t(int n, int k, const Real& s, ScalingMode mode, const Real& c1) {
    if (!(s > 0)) throw DomainError("s_to_t: s must be positive");
    return promote(s) / scaling_factor(n, k, mode, c1);
}

Real t_to_s(int n, int k, const Real& t, ScalingMode mode, const Real& c1) {
    return promote(t) * scaling_factor(n, k, mode, c1);
}

double r_initial(double alpha) { return (1 - 4 * alpha * alpha) / 8; }

std::vector<double> extract_deviation(int k, double alpha, const std::vector<double>& s, int n,
                                      const ExtractOptions& opt) {
    PrecisionGuard g(opt.prec.decimal_digits);
    const Real c1(laguerre_c1());
    std::vector<double> out;
    out.reserve(s.size());
    for (double si : s) {
        PerturbedWeight w{Ensemble::pLUE, n, k, Real(alpha), s_to_t(n, k, Real(si), opt.mode, c1), opt.prec};
        OPSystem<long double> sys = discretized_op_system<long double>(w, n);
        long double sum_a = 0;
        for (int j = 0; j < n; ++j) sum_a += sys.a[j];
        const long double tdlogz = static_cast<long double>(n) * (n + alpha) - n * sum_a;
        out.push_back(static_cast<double>(-2 * tdlogz));
    }
    return out;
}

std::vector<double> extract_r(int k, double alpha, const std::vector<double>& s, int n,
                              const ExtractOptions& opt) {
    std::vector<double> r = extract_deviation(k, alpha, s, n, opt);
    for (double& v : r) v += r_initial(alpha);
    return r;
}

std::vector<double> log_grid(double lo, double hi, int per_decade) {
    if (!(lo > 0 && hi > lo) || per_decade < 1) throw DomainError("log_grid: need 0 < lo < hi");
    const double decades = std::log10(hi / lo);
    const int steps = std::max(1, static_cast<int>(std::ceil(decades * per_decade - 1e-9)));
    std::vector<double> g(steps + 1);
    for (int i = 0; i <= steps; ++i) g[i] = lo * std::pow(10.0, decades * i / steps);
    g.back() = hi;
    return g;
}

std::vector<double> y_from_r(const std::vector<double>& s, const std::vector<double>& r, int stencil,
                             int fit_degree) {
    check_grid(s, stencil, fit_degree);
    if (r.size() != s.size()) throw GridMismatch("y_from_r: r and s differ in length");
    for (size_t i = 1; i < s.size(); ++i)
        if (std::log10(s[i] / s[i - 1]) > 1.0 / 12 + 1e-9)
            throw DomainError("y_from_r: grid coarser than 12 points per decade");
    const int N = static_cast<int>(s.size());
    std::vector<double> y(N);
    Eigen::MatrixXd V(stencil, fit_degree + 1);
    Eigen::VectorXd b(stencil);
    for (int i = 0; i < N; ++i) {
        int lo = std::clamp(i - stencil / 2, 0, N - stencil);
        const double Li = std::log(s[i]);
        for (int j = 0; j < stencil; ++j) {
            const double d = std::log(s[lo + j]) - Li;
            double p = 1;
            for (int c = 0; c <= fit_degree; ++c, p *= d) V(j, c) = p;
            b[j] = r[lo + j];
        }
        const Eigen::VectorXd c = V.colPivHouseholderQr().solve(b);
        // dr/dlog s = c1, so r'(s) = c1 / s and y(sigma) = -4 sigma r'(sigma^2) = -4 c1 / sigma.
        y[i] = -4 * c[1] / std::sqrt(s[i]);
    }
    return y;
}

const std::vector<double>& r_column(const TranscendentTable& table, int column) {
    if (column < 0) return table.r_extrapolated;
    if (column >= static_cast<int>(table.r.size())) throw DomainError("r_column: no such column");
    return table.r[column];
}

std::vector<double> y_from_r(const TranscendentTable& table) {
    return y_from_r(table.s, table.r_extrapolated, table.stencil, table.fit_degree);
}

TranscendentTable extract_table(int k, double alpha, const std::vector<double>& s,
                                const std::vector<int>& n_list, const ExtractOptions& opt) {
    if (n_list.empty()) throw DomainError("extract_table: empty n list");
    check_grid(s, opt.stencil, opt.fit_degree);
    TranscendentTable T;
    T.k = k;
    T.alpha = alpha;
    T.mode = opt.mode;
    T.c1 = opt.mode == ScalingMode::with_c1 ? laguerre_c1() : 1.0;
    T.stencil = opt.stencil;
    T.fit_degree = opt.fit_degree;
    T.s = s;
    T.n_used = n_list;
    std::sort(T.n_used.begin(), T.n_used.end());
    {
        PrecisionGuard g(opt.prec.decimal_digits);
        for (int n : T.n_used) {
            std::vector<double> tn;
            for (double si : s)
                tn.push_back(static_cast<double>(s_to_t(n, k, Real(si), opt.mode, Real(laguerre_c1()))));
            T.t.push_back(tn);
        }
    }
    const double r0 = r_initial(alpha);
    for (int n : T.n_used) {
        T.deviation.push_back(extract_deviation(k, alpha, s, n, opt));
        std::vector<double> r = T.deviation.back();
        for (double& v : r) v += r0;
        T.r.push_back(r);
    }
    const size_t m = T.n_used.size();
    if (m == 1) {
        T.r_extrapolated = T.r[0];
    } else {
        const double n1 = T.n_used[m - 2], n2 = T.n_used[m - 1];
        T.r_extrapolated.resize(s.size());
        for (size_t j = 0; j < s.size(); ++j)
            T.r_extrapolated[j] = (n2 * T.r[m - 1][j] - n1 * T.r[m - 2][j]) / (n2 - n1);
    }
    for (double si : s) T.sigma.push_back(std::sqrt(si));
    T.y = y_from_r(T);
    T.ell1 = T.y;
    return T;
}

LargeSFit verify_large_s(const TranscendentTable& table, double lo, double hi, int column) {
    if (table.sigma.empty() || table.sigma.front() > lo * (1 + 1e-9) || table.sigma.back() < hi * (1 - 1e-9))
        throw DomainError("verify_large_s: table does not cover sigma in [lo, hi]");
    const std::vector<double> y = y_from_r(table.s, r_column(table, column), table.stencil, table.fit_degree);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    LargeSFit f;
    for (size_t i = 0; i < y.size(); ++i) {
        const double sg = table.sigma[i];
        if (sg < lo * (1 - 1e-9) || sg > hi * (1 + 1e-9)) continue;
        const double X = std::log(sg), Y = std::log(std::abs(y[i]));
        sx += X;
        sy += Y;
        sxx += X * X;
        sxy += X * Y;
        ++f.points;
    }
    if (f.points < 4) throw DomainError("verify_large_s: fewer than 4 points in the fit window");
    const double N = f.points;
    f.exponent = (N * sxy - sx * sy) / (N * sxx - sx * sx);
    const double sign = y[y.size() / 2] < 0 ? -1 : 1;
    f.coefficient = sign * std::exp((sy - f.exponent * sx) / N);
    const HierarchyConstants c = hierarchy_constants(table.k, table.alpha);
    const int k = table.k;
    f.expected_exponent = (2.0 * k - 1) / (2.0 * k + 1);
    f.expected_coefficient = -(8.0 * k / (2 * k + 1)) * (c.beta_at(k - 2) - 1.5 * c.z0);
    return f;
}

GridFn piii_residual_extracted(const TranscendentTable& table, int column, int stencil) {
    if (table.k != 1) throw DomainError("piii_residual_extracted: requires k = 1");
    const std::vector<double>& r = r_column(table, column);
    const std::vector<double> l = y_from_r(table.s, r, table.stencil, table.fit_degree);
    double rmax = 0;
    for (double v : r) rmax = std::max(rmax, std::abs(v));
    for (size_t i = 0; i < l.size(); ++i)
        if (std::abs(l[i]) <= 1e-12 * (1 + rmax)) throw SingularityError("l_1 vanishes", table.sigma[i]);
    Eigen::VectorXd nodes(l.size()), vals(l.size());
    for (size_t i = 0; i < l.size(); ++i) {
        nodes[i] = table.sigma[i];
        vals[i] = l[i];
    }
    const HierarchyConstants c = hierarchy_constants(1, table.alpha);
    return piii_residual_k1(GridFn(nodes, vals, stencil), c.tau[0], c.tau[1]);
}

}  // namespace p3lab

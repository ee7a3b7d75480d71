#include "p3lab/hierarchy.hpp"

#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>

namespace p3lab {

double HierarchyConstants::beta_at(int j) const {
    if (j < 0 || j >= static_cast<int>(beta.size())) return 0;
    return beta[j];
}

double double_factorial_ratio(int j) {
    double r = 1;
    for (int i = 1; i <= j; ++i) r *= (2.0 * i + 1) / (2.0 * i);
    return r;
}

HierarchyConstants hierarchy_constants(int k, double alpha) {
    if (k < 1) throw DomainError("hierarchy_constants requires k >= 1");
    if (!(alpha > -1)) throw DomainError("hierarchy_constants requires alpha > -1");
    HierarchyConstants c;
    c.k = k;
    c.alpha = alpha;
    c.tau.assign(k + 1, 0.0);
    c.tau[0] = std::pow(4.0, 2 * k + 1) * k * k;
    c.tau[k] += -std::pow(-4.0, k + 1) * alpha * k;
    c.z0 = -std::pow(double_factorial_ratio(k - 1), 2.0 / (2 * k + 1));
    const double mz = -c.z0;
    for (int j = 0; j <= k - 2; ++j) {
        const double sign = ((j + k - 1) % 2 == 0) ? 1 : -1;
        c.beta.push_back(sign * std::pow(mz, -1.5 - j) * double_factorial_ratio(j));
    }
    c.g1 = c.beta_at(k - 2) - 1.5 * c.z0;
    c.g2 = 0.375 * c.z0 * c.z0 + c.beta_at(k - 3) - 1.5 * c.z0 * c.beta_at(k - 2);
    c.eta = 2.0 * k / (2 * k + 1);
    double sum = 0;
    for (int j = 0; j < k; ++j) sum += double_factorial_ratio(j);
    c.c2 = std::pow(1.5, 2.0 / 3) * std::pow(mz, -1 - 2.0 * k / 3) * sum;
    return c;
}

std::complex<double> g_stationary(std::complex<double> z, int k) {
    if (k < 1) throw DomainError("g_stationary requires k >= 1");
    const HierarchyConstants c = hierarchy_constants(k, 0.0);
    if (z == 0.0) throw DomainError("g_stationary: pole at z = 0");
    if (z.imag() == 0 && z.real() <= c.z0) throw DomainError("g_stationary: z on the branch cut");
    std::complex<double> p = std::pow(z, k - 1);
    for (int j = 0; j <= k - 2; ++j) p += c.beta[j] * std::pow(z, j);
    return std::pow(z - c.z0, 1.5) * p * std::pow(z, -k);
}

namespace {

void require_same(const GridFn& a, const GridFn& b) {
    if (!a.same_grid(b)) throw GridMismatch("hierarchy: functions sampled on different grids");
}

GridFn ell0_like(const GridFn& g) {
    return g.map([](double s, double) { return s / 2; });
}

void check_nonvanishing(const GridFn& f, const char* what) {
    for (Eigen::Index i = 0; i < f.size(); ++i) {
        if (f[i] == 0) throw SingularityError(std::string(what) + " vanishes", f.nodes()[i]);
        if (i > 0 && (f[i] > 0) != (f[i - 1] > 0)) {
            const double x0 = f.nodes()[i - 1], x1 = f.nodes()[i];
            const double loc = x0 - f[i - 1] * (x1 - x0) / (f[i] - f[i - 1]);
            throw SingularityError(std::string(what) + " changes sign", loc);
        }
    }
}

}  // namespace

GridFn lenard_step(const GridFn& lj, const GridFn& u, double c) {
    require_same(lj, u);
    GridFn d = lj.derivative(3) + 4.0 * (u * lj.derivative(1)) + 2.0 * (u.derivative(1) * lj);
    return d.antiderivative(c);
}

GridFn u_from_lk(const GridFn& lk, double tau0) {
    check_nonvanishing(lk, "l_k");
    GridFn sq = lk * lk;
    GridFn d = lk.derivative(1);
    GridFn num = sq.derivative(2) - 3.0 * (d * d) + tau0;
    return GridFn(lk.nodes(), -num.values().cwiseQuotient(4.0 * sq.values()), lk.stencil());
}

std::vector<GridFn> system_residual(int k, const std::vector<GridFn>& ell, const GridFn& u,
                                    const HierarchyConstants& consts) {
    if (k < 1 || static_cast<int>(ell.size()) != k)
        throw std::invalid_argument("system_residual: expected l_1..l_k");
    if (static_cast<int>(consts.tau.size()) != k + 1)
        throw std::invalid_argument("system_residual: constants belong to another k");
    for (const GridFn& l : ell) require_same(l, u);

    const GridFn zero = u.map([](double, double) { return 0.0; });
    std::vector<GridFn> L;
    L.push_back(ell0_like(u));
    for (const GridFn& l : ell) L.push_back(l);
    L.push_back(zero);
    std::vector<GridFn> D;
    for (const GridFn& l : L) D.push_back(l.derivative(1));

    std::vector<GridFn> out;
    for (int p = 0; p <= k; ++p) {
        GridFn acc = zero;
        for (int q = 0; q <= p; ++q) {
            const int a = k - p + q, b = k - q;
            GridFn prod = L[a] * L[b];
            acc += L[a + 1] * L[b];
            acc -= prod.derivative(2);
            acc += 3.0 * (D[a] * D[b]);
            acc -= 4.0 * (u * prod);
        }
        out.push_back(acc - consts.tau[p]);
    }
    return out;
}

GridFn piii_residual_k1(const GridFn& l1, double tau0, double tau1) {
    check_nonvanishing(l1, "l_1");
    for (Eigen::Index i = 0; i < l1.size(); ++i)
        if (!(l1.nodes()[i] > 0)) throw DomainError("piii_residual_k1 requires s > 0");
    const GridFn d1 = l1.derivative(1), d2 = l1.derivative(2);
    Eigen::VectorXd r(l1.size());
    for (Eigen::Index i = 0; i < l1.size(); ++i) {
        const double s = l1.nodes()[i], l = l1[i], dl = d1[i];
        r[i] = dl * dl / l - dl / s - l * l / s - tau0 / l + tau1 / s - d2[i];
    }
    return GridFn(l1.nodes(), r, l1.stencil());
}

GridFn piii_reference_k1(const Eigen::VectorXd& s, double tau0, double tau1, double l_start, double dl_start,
                         int stencil) {
    if (s.size() < 2 || !(s[0] > 0)) throw DomainError("piii_reference_k1 requires an increasing grid in s > 0");
    using State = std::array<double, 2>;
    auto rhs = [&](const State& y, State& dy, double x) {
        dy[0] = y[1];
        dy[1] = y[1] * y[1] / y[0] - y[1] / x - y[0] * y[0] / x - tau0 / y[0] + tau1 / x;
    };
    namespace ode = boost::numeric::odeint;
    auto stepper = ode::make_dense_output(1e-14, 1e-14, ode::runge_kutta_dopri5<State>());
    Eigen::VectorXd v(s.size());
    State y{l_start, dl_start};
    v[0] = l_start;
    stepper.initialize(y, s[0], 1e-4 * s[0]);
    for (Eigen::Index i = 1; i < s.size(); ++i) {
        while (stepper.current_time() < s[i]) {
            stepper.do_step(rhs);
            const State& c = stepper.current_state();
            if (!std::isfinite(c[0]) || !std::isfinite(c[1]) || c[0] == 0 || std::abs(c[0]) > 1e12)
                throw SingularityError("piii_reference_k1: solution blows up", stepper.current_time());
        }
        State out;
        stepper.calc_state(s[i], out);
        v[i] = out[0];
    }
    return GridFn(s, v, stencil);
}

HierarchyCheckK1 hierarchy_check_k1(double alpha, const Eigen::VectorXd& s, int stencil, double l_start,
                                    double dl_start) {
    const HierarchyConstants c = hierarchy_constants(1, alpha);
    GridFn l1 = piii_reference_k1(s, c.tau[0], c.tau[1], l_start, dl_start, stencil);
    GridFn u = u_from_lk(l1, c.tau[0]);
    std::vector<GridFn> sys = system_residual(1, {l1}, u, c);
    const GridFn l0 = GridFn::sample(s, [](double x) { return x / 2; }, stencil);
    GridFn rebuilt = lenard_step(l0, u, l1[0]) - l1;
    GridFn l2 = lenard_step(l1, u, 0.0);
    GridFn piii = piii_residual_k1(l1, c.tau[0], c.tau[1]);
    return HierarchyCheckK1{l1, u, piii, sys[0], sys[1], rebuilt, l2};
}

std::complex<double> b_poly(std::complex<double> z, double s, const std::vector<double>& ell) {
    if (z == 0.0) throw DomainError("b_poly: z = 0");
    const int k = static_cast<int>(ell.size());
    if (k < 1) throw std::invalid_argument("b_poly: need l_1..l_k");
    const std::complex<double> w = 4.0 * z;
    // Horner in 1/(4z): sum_j l_{k-j} w^{j-k-1} = sum_m l_m w^{-(m+1)}.
    std::complex<double> acc = 0;
    for (int m = k; m >= 0; --m) {
        const double lm = (m == 0) ? s / 2 : ell[m - 1];
        acc = (acc + lm) / w;
    }
    return 4.0 * acc;
}

GridFunction<std::complex<double>> b_grid(std::complex<double> z, const std::vector<GridFn>& ell) {
    if (ell.empty()) throw std::invalid_argument("b_grid: need l_1..l_k");
    for (const GridFn& l : ell) require_same(l, ell.front());
    const GridFn& g = ell.front();
    Eigen::VectorXcd v(g.size());
    std::vector<double> at(ell.size());
    for (Eigen::Index i = 0; i < g.size(); ++i) {
        for (size_t j = 0; j < ell.size(); ++j) at[j] = ell[j][i];
        v[i] = b_poly(z, g.nodes()[i], at);
    }
    return GridFunction<std::complex<double>>(g.nodes(), v, g.stencil());
}

GridFunction<std::complex<double>> lax_compat_residual(const GridFunction<std::complex<double>>& b,
                                                       const GridFn& u, std::complex<double> z) {
    if (!b.same_grid(u)) throw GridMismatch("lax_compat_residual: grids differ");
    const auto d1 = b.derivative(1), d3 = b.derivative(3);
    const GridFn du = u.derivative(1);
    Eigen::VectorXcd r(b.size());
    for (Eigen::Index i = 0; i < b.size(); ++i)
        r[i] = 2.0 * (z - u[i]) * d1[i] - du[i] * b[i] - 0.5 * d3[i] - 1.0;
    return GridFunction<std::complex<double>>(b.nodes(), r, b.stencil());
}

}  // namespace p3lab

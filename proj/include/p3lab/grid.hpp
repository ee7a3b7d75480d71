#pragma once

#include "p3lab/precision.hpp"

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace p3lab {

class GridMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class SingularityError : public DomainError {
public:
    SingularityError(const std::string& what, double location)
        : DomainError(what + " at s = " + std::to_string(location)), location_(location) {}
    double location() const { return location_; }

private:
    double location_;
};

// Finite-difference weights for derivatives 0..m at z from the nodes x (Fornberg's algorithm).
// Returns a (x.size()) x (m + 1) array; column d holds the weights for the d-th derivative.
template <class T>
Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> fornberg_weights(const T& z,
                                                                  const std::vector<T>& x, int m) {
    const int n = static_cast<int>(x.size());
    Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> c =
        Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, m + 1);
    T c1 = T(1);
    T c4 = x[0] - z;
    c(0, 0) = T(1);
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, m);
        T c2 = T(1);
        const T c5 = c4;
        c4 = x[i] - z;
        for (int j = 0; j < i; ++j) {
            const T c3 = x[i] - x[j];
            c2 = c2 * c3;
            if (j == i - 1) {
                for (int d = mn; d >= 1; --d)
                    c(i, d) = c1 * (T(d) * c(i - 1, d - 1) - c5 * c(i - 1, d)) / c2;
                c(i, 0) = -c1 * c5 * c(i - 1, 0) / c2;
            }
            for (int d = mn; d >= 1; --d) c(j, d) = (c4 * c(j, d) - T(d) * c(j, d - 1)) / c3;
            c(j, 0) = c4 * c(j, 0) / c3;
        }
        c1 = c2;
    }
    return c;
}

template <class T>
struct ScalarReal {
    using type = T;
};
template <class T>
struct ScalarReal<std::complex<T>> {
    using type = T;
};

// Sampled function on a strictly increasing real grid. Derivatives and antiderivatives use
// local interpolating polynomials on `stencil` consecutive nodes; a stencil equal to the grid
// size gives a global (spectral on Chebyshev nodes) rule.
template <class Scalar>
class GridFunction {
public:
    using RealScalar = typename ScalarReal<Scalar>::type;
    using NodeVector = Eigen::Matrix<RealScalar, Eigen::Dynamic, 1>;
    using ValueVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    GridFunction(NodeVector nodes, ValueVector values, int stencil = 9)
        : nodes_(std::move(nodes)), values_(std::move(values)), stencil_(stencil) {
        if (nodes_.size() != values_.size())
            throw GridMismatch("GridFunction: nodes and values differ in length");
        if (nodes_.size() < 8) throw std::invalid_argument("GridFunction: at least 8 nodes required");
        for (Eigen::Index i = 1; i < nodes_.size(); ++i)
            if (!(nodes_[i] > nodes_[i - 1]))
                throw std::invalid_argument("GridFunction: nodes must be strictly increasing");
        if (stencil_ < 4) throw std::invalid_argument("GridFunction: stencil must be at least 4");
        if (stencil_ > nodes_.size()) stencil_ = static_cast<int>(nodes_.size());
    }

    template <class F>
    static GridFunction sample(const NodeVector& nodes, F f, int stencil = 9) {
        ValueVector v(nodes.size());
        for (Eigen::Index i = 0; i < nodes.size(); ++i) v[i] = f(nodes[i]);
        return GridFunction(nodes, v, stencil);
    }

    const NodeVector& nodes() const { return nodes_; }
    const ValueVector& values() const { return values_; }
    Eigen::Index size() const { return nodes_.size(); }
    int stencil() const { return stencil_; }
    Scalar operator[](Eigen::Index i) const { return values_[i]; }

    bool same_grid(const GridFunction& o) const {
        return nodes_.size() == o.nodes_.size() && nodes_ == o.nodes_;
    }
    template <class Other>
    bool same_grid(const GridFunction<Other>& o) const {
        if (nodes_.size() != o.nodes().size()) return false;
        for (Eigen::Index i = 0; i < nodes_.size(); ++i)
            if (nodes_[i] != o.nodes()[i]) return false;
        return true;
    }

    GridFunction derivative(int order = 1) const {
        if (order < 0) throw std::invalid_argument("derivative order must be non-negative");
        if (order == 0) return *this;
        if (order >= stencil_) throw std::invalid_argument("derivative order exceeds the stencil");
        ValueVector out(size());
        std::vector<RealScalar> x(stencil_);
        for (Eigen::Index i = 0; i < size(); ++i) {
            const Eigen::Index lo = window_start(i);
            for (int j = 0; j < stencil_; ++j) x[j] = nodes_[lo + j];
            auto w = fornberg_weights<RealScalar>(nodes_[i], x, order);
            Scalar acc = Scalar(0);
            for (int j = 0; j < stencil_; ++j) acc += w(j, order) * values_[lo + j];
            out[i] = acc;
        }
        return GridFunction(nodes_, out, stencil_);
    }

    // F with F' = f and F(nodes[0]) = c.
    GridFunction antiderivative(const Scalar& c) const {
        ValueVector out(size());
        out[0] = c;
        std::vector<RealScalar> x(stencil_);
        const int m = stencil_ - 1;
        for (Eigen::Index i = 0; i + 1 < size(); ++i) {
            const RealScalar mid = (nodes_[i] + nodes_[i + 1]) / 2;
            const RealScalar half = (nodes_[i + 1] - nodes_[i]) / 2;
            Eigen::Index lo = i - (stencil_ - 2) / 2;
            if (lo < 0) lo = 0;
            if (lo + stencil_ > size()) lo = size() - stencil_;
            for (int j = 0; j < stencil_; ++j) x[j] = nodes_[lo + j];
            auto w = fornberg_weights<RealScalar>(mid, x, m);
            Scalar acc = Scalar(0);
            RealScalar hp = half;             // half^{d+1}
            RealScalar fact = RealScalar(1);  // (d+1)!
            for (int d = 0; d <= m; ++d) {
                if (d > 0) fact *= RealScalar(d + 1);
                if (d % 2 == 0) {
                    RealScalar coef = RealScalar(2) * hp / fact;
                    Scalar deriv = Scalar(0);
                    for (int j = 0; j < stencil_; ++j) deriv += w(j, d) * values_[lo + j];
                    acc += coef * deriv;
                }
                hp *= half;
            }
            out[i + 1] = out[i] + acc;
        }
        return GridFunction(nodes_, out, stencil_);
    }

    template <class F>
    GridFunction map(F f) const {
        ValueVector out(size());
        for (Eigen::Index i = 0; i < size(); ++i) out[i] = f(nodes_[i], values_[i]);
        return GridFunction(nodes_, out, stencil_);
    }

    RealScalar max_abs() const {
        using std::abs;
        RealScalar m = RealScalar(0);
        for (Eigen::Index i = 0; i < size(); ++i) {
            const RealScalar a = abs(values_[i]);
            if (!(a <= m)) m = a;  // NaN propagates
        }
        return m;
    }

    // Largest |value| over nodes whose coordinate lies in [a, b].
    RealScalar max_abs_on(const RealScalar& a, const RealScalar& b) const {
        using std::abs;
        RealScalar m = RealScalar(0);
        for (Eigen::Index i = 0; i < size(); ++i)
            if (nodes_[i] >= a && nodes_[i] <= b) {
                const RealScalar v = abs(values_[i]);
                if (!(v <= m)) m = v;
            }
        return m;
    }

    GridFunction& operator+=(const GridFunction& o) {
        check(o);
        values_ += o.values_;
        return *this;
    }
    GridFunction& operator-=(const GridFunction& o) {
        check(o);
        values_ -= o.values_;
        return *this;
    }
    GridFunction& operator*=(const GridFunction& o) {
        check(o);
        values_ = values_.cwiseProduct(o.values_);
        return *this;
    }
    GridFunction& operator*=(const Scalar& a) {
        values_ *= a;
        return *this;
    }
    GridFunction& operator+=(const Scalar& a) {
        values_.array() += a;
        return *this;
    }

private:
    Eigen::Index window_start(Eigen::Index i) const {
        Eigen::Index lo = i - stencil_ / 2;
        if (lo < 0) lo = 0;
        if (lo + stencil_ > size()) lo = size() - stencil_;
        return lo;
    }
    void check(const GridFunction& o) const {
        if (!same_grid(o)) throw GridMismatch("GridFunction: grids differ");
    }

    NodeVector nodes_;
    ValueVector values_;
    int stencil_;
};

template <class S>
GridFunction<S> operator+(GridFunction<S> a, const GridFunction<S>& b) {
    return a += b;
}
template <class S>
GridFunction<S> operator-(GridFunction<S> a, const GridFunction<S>& b) {
    return a -= b;
}
template <class S>
GridFunction<S> operator*(GridFunction<S> a, const GridFunction<S>& b) {
    return a *= b;
}
template <class S>
GridFunction<S> operator*(const S& c, GridFunction<S> a) {
    return a *= c;
}
template <class S>
GridFunction<S> operator*(GridFunction<S> a, const S& c) {
    return a *= c;
}
template <class S>
GridFunction<S> operator+(GridFunction<S> a, const S& c) {
    return a += c;
}
template <class S>
GridFunction<S> operator-(GridFunction<S> a, const S& c) {
    return a += S(-c);
}
template <class S>
GridFunction<S> operator-(GridFunction<S> a) {
    return a *= S(-1);
}

// Chebyshev extreme points mapped to [a, b], increasing.
template <class T>
Eigen::Matrix<T, Eigen::Dynamic, 1> chebyshev_nodes(const T& a, const T& b, int n) {
    using std::cos;
    Eigen::Matrix<T, Eigen::Dynamic, 1> x(n);
    const T p = T(M_PI);
    for (int i = 0; i < n; ++i) {
        T t = -cos(p * T(i) / T(n - 1));
        x[i] = (a + b) / T(2) + (b - a) / T(2) * t;
    }
    return x;
}

template <class T>
Eigen::Matrix<T, Eigen::Dynamic, 1> uniform_nodes(const T& a, const T& b, int n) {
    Eigen::Matrix<T, Eigen::Dynamic, 1> x(n);
    for (int i = 0; i < n; ++i) x[i] = a + (b - a) * T(i) / T(n - 1);
    return x;
}

}  // namespace p3lab

#pragma once

#include "p3lab/precision.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace p3lab::detail {

// tanh-sinh on [a, b] at the current default precision.
template <class F>
Real integrate(F f, const Real& a, const Real& b, int digits) {
    boost::math::quadrature::tanh_sinh<Real> ts(15, pow(Real(10), -4 * digits));
    return ts.integrate(f, a, b, pow(Real(10), -digits));
}

template <class F>
Complex integrate_complex(F f, const Real& a, const Real& b, int digits) {
    Real re = integrate([&](const Real& t) { return Real(f(t).real()); }, a, b, digits);
    Real im = integrate([&](const Real& t) { return Real(f(t).imag()); }, a, b, digits);
    return Complex(re, im);
}

}  // namespace p3lab::detail

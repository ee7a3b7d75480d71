#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <complex>
#include <stdexcept>
#include <string>

namespace p3lab {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;
using Complex = std::complex<Real>;

struct Precision {
    int decimal_digits = 60;
};

class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Sets the default mpfr precision for the lifetime of the guard.
class PrecisionGuard {
public:
    explicit PrecisionGuard(int digits) : saved_(Real::default_precision()) {
        Real::default_precision(digits);
    }
    ~PrecisionGuard() { Real::default_precision(saved_); }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    unsigned saved_;
};

inline void require_precision(const Precision& p) {
    if (p.decimal_digits < 30)
        throw DomainError("precision must be at least 30 decimal digits, got " +
                          std::to_string(p.decimal_digits));
}

// Copies keep their source precision, so inputs are lifted explicitly inside a guard.
inline Real promote(const Real& x) { return Real(x, Real::default_precision()); }
inline Complex promote(const Complex& z) { return Complex(promote(z.real()), promote(z.imag())); }

inline Real pi() {
    Real r;
    mpfr_const_pi(r.backend().data(), MPFR_RNDN);
    return r;
}

inline Real eps_digits(int digits) { return pow(Real(10), -digits); }

// Full-precision decimal string.
std::string to_string(const Real& x, int digits = 0);

}  // namespace p3lab

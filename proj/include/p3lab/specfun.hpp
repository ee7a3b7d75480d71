#pragma once

#include "p3lab/precision.hpp"

#include <Eigen/Core>
#include <Eigen/LU>

namespace p3lab {

enum class BesselKind { J, I, K };

Real bessel(BesselKind kind, const Real& nu, const Real& x, Precision prec);
// d/dx of the same function.
Real bessel_derivative(BesselKind kind, const Real& nu, const Real& x, Precision prec);

// I_nu and K_nu of complex argument, principal branch, real order.
Complex bessel_complex(BesselKind kind, const Real& nu, const Complex& w, Precision prec);

struct AiryPair {
    Real ai;
    Real aip;
};
struct AiryPairC {
    Complex ai;
    Complex aip;
};

AiryPair airy(const Real& x, Precision prec);
AiryPairC airy_complex(const Complex& z, Precision prec);

// Bessel kernel J_alpha(u,v) for u, v > 0.
Real bessel_kernel(const Real& alpha, const Real& u, const Real& v, Precision prec);
// Airy kernel A(u,v).
Real airy_kernel(const Real& u, const Real& v, Precision prec);

using ComplexMatrix2 = Eigen::Matrix<Complex, 2, 2>;

// Sectors of the Bessel model problem. The rays arg z = 2pi/3, pi, -2pi/3 are all
// oriented away from the origin, so on the negative axis the + side is Im z < 0.
enum class BesselRegion { Omega1, Omega2, Omega3 };
BesselRegion bessel_region_of(const Complex& z);
ComplexMatrix2 bessel_model_matrix(const Complex& z, BesselRegion region, const Real& alpha,
                                   Precision prec);

// Airy model problem: rays arg z = 2pi/3, pi, -2pi/3 point away from the origin,
// the positive axis points towards it.
ComplexMatrix2 airy_model_matrix(const Complex& z, Precision prec);

// f2(z, s) = e^{-z}/(2 pi i) * int_0^{-inf} |u|^a e^u e^{-2(-s/u)^k} du/(u - z).
// Across the negative axis f2(x+i0) - f2(x-i0) = -|x|^a exp(-2 (s/|x|)^k).
Complex f2_origin(const Complex& z, const Real& s, int k, const Real& alpha, Precision prec);

// -f2(z,0) - z^a / (2 i sin(pi a)) for non-integer a, -f2(z,0) + (i/pi) log(sqrt(z)/2) for
// integer a. Both are continuous across the negative axis.
Complex entire_h(const Complex& z, const Real& alpha, Precision prec);

}  // namespace p3lab

#pragma once

#include <complex>

namespace cusped {

using Complex = std::complex<double>;

/// Euler's constant, computed once as -psi(1).
double euler_gamma();

/// psi(z): upward recurrence to Re z >= 10, then the asymptotic series.
/// Throws ComputationError("PoleEvaluation") at nonpositive integers.
Complex digamma(Complex z);

/// log Gamma(z) (Lanczos, reflection for Re z < 1/2); principal branch is
/// not guaranteed, exp(log_gamma(z)) is.
Complex log_gamma(Complex z);
Complex complex_gamma(Complex z);

/// Upper incomplete gamma Gamma(a, x) for complex a and real x > 0.
Complex upper_gamma(Complex a, double x);

}  // namespace cusped

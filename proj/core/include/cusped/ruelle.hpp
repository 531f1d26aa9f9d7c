#pragma once

#include "cusped/spectrum.hpp"

namespace cusped {

struct HyperbolicWeights {
  double delta = 0.0;
  Complex a0;
  Complex a1;
};

/// Truncated value together with a bound on the omitted tail.
struct TruncationReport {
  Complex value;
  double tailBound = 0.0;
  int termsUsed = 0;
};

HyperbolicWeights weights(const GeodesicClass& c);

/// Heuristic constant C with N(L) <= C e^{2L}, fitted as the largest
/// observed N(l) e^{-2l}. Only multiplicity-one classes when primitiveOnly.
double counting_constant(const Spectrum& s, bool primitiveOnly);

/// Product over primitive classes of (1 - rho e^{-z l}). Requires Re z > 2
/// unless the spectrum is flagged complete.
TruncationReport euler_product(const Spectrum& s, Complex z);
/// Sum of principal logarithms of the Euler factors.
TruncationReport log_euler_product(const Spectrum& s, Complex z);

/// Y_j(z) = sum over all classes of a_j e^{-z l}.
TruncationReport y_series(const Spectrum& s, int j, Complex z);
/// log S_j(z) = -sum over all classes of a_j e^{-z l} / l.
TruncationReport log_s_series(const Spectrum& s, int j, Complex z);

/// |log R(z) - (log S_0(z) + log S_0(z+2) - log S_1(z+1))| with the tail
/// bound coming from powers of listed primitives beyond the cutoff.
TruncationReport fried_residual(const Spectrum& s, Complex z);

/// d/dz log R(z) by central differences with Richardson extrapolation.
Complex log_derivative_numeric(const Spectrum& s, Complex z, double h = 1e-4);
/// Y_0(z) - Y_1(z+1) + Y_0(z+2).
TruncationReport log_derivative_series(const Spectrum& s, Complex z);

/// H_j(t); H_1 omits the e^{-t} factor and uses a_1.
Complex hyperbolic_heat(const Spectrum& s, int j, double t);

}  // namespace cusped

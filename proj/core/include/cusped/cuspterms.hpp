#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cusped/laplace.hpp"

namespace cusped {

/// Lattice in C spanned by two R-independent complex numbers.
struct Lattice2D {
  Complex b1{1.0, 0.0};
  Complex b2{0.0, 1.0};

  double covolume() const { return std::abs((std::conj(b1) * b2).imag()); }
  /// Throws ValidationError("DegenerateLattice").
  void validate() const;
};

/// Unitary character of the lattice given by its values on b1 and b2.
struct LatticeCharacter {
  Complex v1{1.0, 0.0};
  Complex v2{1.0, 0.0};

  bool is_trivial(double tol = 1e-12) const;
  Complex operator()(long long m, long long n) const;
  void validate() const;
};

struct LatticeFile {
  Lattice2D lattice;
  LatticeCharacter character;
};

/// {"b1":[re,im],"b2":[re,im],"chi":[[re,im],[re,im]]}; chi is optional.
LatticeFile parse_lattice(const std::string& json_text);

/// Identity contributions e^t I_0 and I_1.
struct IdentityTransforms {
  MeroSum M0;
  MeroSum M1;
};
IdentityTransforms identity_lprime(double vol);
/// I_0(t) for j = 0, I_1(t) for j = 1.
double identity_heat(double vol, double t, int j);

/// Sum over nonzero lattice points of chi(g) |g|^{-2(1+s)}, continued to
/// Re s > -1 by Ewald splitting. Throws ComputationError("PoleEvaluation")
/// at s = 0 for the trivial character.
Complex epstein(const Lattice2D& L, const LatticeCharacter& chi, Complex s);

struct EpsteinConstants {
  double residue = 0.0;   // R
  double constant = 0.0;  // C = lim (L(s) - R/s)
  double errorEstimate = 0.0;
};
/// Throws ComputationError("ExtrapolationUnstable").
EpsteinConstants epstein_residue_and_constant(const Lattice2D& L, const LatticeCharacter& chi);

/// T(k_{j,t}, 0) up to the |L| C factor: e^{-t} sqrt(pi/t) / 4 pi^2 for
/// j = 0 and sqrt(pi/t) / 2 pi^2 + e^{-t} sqrt(pi/t) / 4 pi^2 for j = 1.
double unipotent_kernel_trace(int j, double t);

struct UnipotentCase {
  bool trivialRestriction = false;
  double covolume = 1.0;
  double constant = 0.0;  // C from epstein_residue_and_constant
};

struct UnipotentTransforms {
  MeroSum U0shifted;  // L'(e^t U_0)(z - 1)
  MeroSum U1;
  MeroSum combination;  // U0shifted(z) - U1(z) + U0shifted(z + 2)
};
UnipotentTransforms unipotent_lprime(const UnipotentCase& c);

/// L'(e^t J_0)(z) = 2 (psi(1) - psi(z + 1)).
MeroSum j0_lprime();
/// L'(J_{+1})(z) = L'(J_{-1})(z) = 2 psi(1) - psi(z) - psi(z + 2).
MeroSum j1_lprime();

/// -1 / (2z)
MeroSum threshold_lprime();

struct ScatteringPoles {
  double c0 = 0.0;
  double c1 = 0.0;
  std::vector<Complex> poles0;
  std::vector<Complex> poles1;

  /// Throws ValidationError("PoleOnAxis").
  void validate() const;
};

/// {"c0":..,"c1":..,"poles0":[[re,im],..],"poles1":[[re,im],..]}
ScatteringPoles parse_scattering(const std::string& json_text);

struct ScatteringTransforms {
  MeroSum S0;         // L'(e^t S_0)(z)
  MeroSum S0shifted;  // S0(z - 1) + threshold(z - 1)
  MeroSum S1;
};
ScatteringTransforms scattering_lprime(const ScatteringPoles& p);

}  // namespace cusped

#pragma once

#include "curlspec/spectrum.hpp"
#include "curlspec/torus.hpp"

#include <string>
#include <vector>

namespace curlspec {

// Leading coefficient c of the counting asymptotics N_+-(lambda) ~ c*lambda^n:
//
//     c = vol / (2 * pi^((n+1)/2) * n * ((n-1)/2)!)
//
// Exact as a PiRational since the supported volumes are themselves
// PiRationals. Examples: n = 3 and vol = 1 give 1/6 * pi^-2, the unit S^3
// (vol = 2*pi^2) gives 1/3.
PiRational weyl_leading_coefficient(int n, const PiRational& volume);

struct WeylSample {
  double lambda = 0.0;
  long long n_plus = 0;
  long long n_minus = 0;
  double predicted = 0.0;  // c * lambda^n
  double rel_error_plus = 0.0;
  double rel_error_minus = 0.0;
};

struct WeylReport {
  PiRational coefficient;
  std::vector<WeylSample> samples;
  // Least-squares slope of log(max rel error) against log(lambda); negative
  // when the counting functions converge to the predicted growth.
  double log_slope = 0.0;
};

// Samples N_+- against c*lambda^n at geometrically spaced lambda up to the
// truncation. Throws ValidationError when the spectrum is too short to place
// `samples` distinct points above its smallest eigenvalue magnitude.
WeylReport weyl_fit(const Spectrum& spectrum, int samples = 10);

// Both sides of the torus counting identity
//
//     N_+(lambda) + N_-(lambda)
//         = (-1)^((n-1)/2) * sum_{p=0}^{(n-1)/2} (-1)^p binom(n,p) N(0,lambda^2)
//
// where N(0, lambda^2) counts nonzero dual-lattice vectors with
// 2*pi*|mu| <= lambda. The left side goes through the full spectrum pipeline
// (enumeration, validation, counting); the right side re-counts the dual
// shells directly, so the two sides exercise independent paths.
struct CountingIdentityReport {
  BigInt lhs;
  BigInt rhs;
  bool match = false;
};
CountingIdentityReport counting_identity_check_torus(const LatticeBasis& basis, double lambda,
                                                     const TorusOptions& options = {});

// Partial sum of zeta(s) = sum_{lambda != 0} m(curl,lambda) |lambda|^-s over
// the computed lines, with a tail estimate 2*c*n/(s-n) * truncation^(n-s)
// from the Weyl coefficient c. Requires s > n (the proven convergence
// region); otherwise ValidationError.
struct ZetaPartial {
  double s = 0.0;
  double partial = 0.0;
  double tail_bound = 0.0;
};
ZetaPartial zeta_partial(const Spectrum& spectrum, double s);

// zeta(0) = (-1)^((n+1)/2) * sum_{p=0}^{(n-1)/2} (-1)^p b_p, an integer
// topological invariant, and its mod-2 reduction (the Kervaire
// semi-characteristic). T^3 -> -2 (semi-characteristic 0), S^3 -> 1,
// S^5 -> -1, every 3-dimensional spherical space form -> 1.
struct ZetaZeroReport {
  BigInt zeta_zero;
  int semi_characteristic = 0;
};
ZetaZeroReport zeta_at_zero(const ManifoldDescriptor& descriptor);

// Partial sum of eta(s) = sum_{lambda > 0} (m(curl,lambda) - m(curl,-lambda))
// * lambda^-s over the computed lines; identically 0 for symmetric spectra.
// Requires s > n.
double eta_partial(const Spectrum& spectrum, double s);

// Lower-bound kinds: `curvature_operator` is the general bound
// |lambda| >= (n+1)/2 * sqrt(kappa) under curvature operator >= kappa;
// `ricci_3d` is the sharp 3-dimensional bound |lambda| >= 2*sqrt(kappa)
// under Ric >= 2*kappa.
enum class BoundKind { curvature_operator, ricci_3d };

std::string bound_kind_name(BoundKind kind);
BoundKind parse_bound_kind(const std::string& name);  // "curvature-operator" | "ricci-3d"

struct BoundReport {
  double kappa = 0.0;
  BoundKind kind = BoundKind::curvature_operator;
  double bound = 0.0;
  // bound^2 = kappa*(n+1)^2/4 resp. 4*kappa is rational whenever kappa is;
  // equality tests against integer eigenvalues use it exactly.
  Rational bound_squared;
  double min_abs_lambda = 0.0;  // 0 when the spectrum has no lines
  bool pass = false;
  bool attained = false;
  long long mult_plus = 0;   // multiplicity at exactly +bound
  long long mult_minus = 0;  // multiplicity at exactly -bound
};

// Checks every line against the bound. kind ricci_3d requires n = 3.
// Equality at the bound is decided exactly for integer eigenvalues; torus
// eigenvalues 2*pi*sqrt(q) can never equal a rational bound and only enter
// the pass/fail comparison.
BoundReport check_lower_bound(const Spectrum& spectrum, double kappa, BoundKind kind);

}  // namespace curlspec

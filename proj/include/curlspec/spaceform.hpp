#pragma once

#include "curlspec/spectrum.hpp"

#include <array>
#include <optional>
#include <utility>
#include <vector>

namespace curlspec {

using Mat4 = std::array<std::array<double, 4>, 4>;

// Exact description of a block rotation R(2*pi*p1/q, 2*pi*p2/q), reduced so
// that 0 <= p1, p2 < q and gcd(p1, p2, q) = 1. Elements built from angles
// carry a tag; it makes equality, fixed-point tests and the series cosines
// exact. Elements given as raw matrices have no tag and fall back to the
// documented 1e-9 tolerances.
struct AngleTag {
  long long q = 1;
  long long p1 = 0;
  long long p2 = 0;
  bool operator==(const AngleTag&) const = default;
};

struct GroupElement {
  Mat4 m{};
  std::optional<AngleTag> tag;

  static GroupElement identity();
  static GroupElement from_angles(long long q, long long p1, long long p2);
  // Validates orthogonality and det = 1 to 1e-12.
  static GroupElement from_matrix(const Mat4& m);
};

GroupElement multiply(const GroupElement& a, const GroupElement& b);

struct GroupOptions {
  unsigned long long max_order = 100000;
};

// A finite subgroup of SO(4), closed under multiplication, identity first.
struct IsometryGroup {
  std::vector<GroupElement> elements;
  long long order() const { return static_cast<long long>(elements.size()); }
};

// Closure of the generated group by breadth-first multiplication. Elements
// are deduplicated by exact angle tags when available, otherwise by matrix
// entries quantized at 1e-9. Throws ClosureCapError beyond max_order.
IsometryGroup close_group(const std::vector<GroupElement>& generators,
                          const GroupOptions& options = {});

// Every non-identity element must act freely on S^3, i.e. have no eigenvalue
// 1: exact test p1, p2 != 0 (mod q) for tagged elements, |det(I - g)| > 1e-9
// otherwise. Throws ValidationError naming the offending element.
void assert_fixed_point_free(const IsometryGroup& group);

// Characters of the induced action on the self-dual / anti-self-dual parts
// of Lambda^2 R^4, computed as traces of the induced 6x6 action restricted to
// the invariant 3-dimensional subspaces spanned by
//   Lambda+ : e12+e34, e14+e23, e13-e24
//   Lambda- : e12-e34, e14-e23, e13+e24
// For a block rotation these equal 1 + 2cos(theta1 +- theta2).
std::pair<double, double> chi_pm(const GroupElement& g);

// Coefficients (c0..c4) of det(I - z*g), c0 = 1. Characteristic polynomial
// via Newton's identities on power traces.
std::array<double, 5> det_one_minus_z(const GroupElement& g);

struct SpaceformOptions {
  // Starting working precision in decimal digits for the series arithmetic.
  // Supported ladder: 60, 120, 240, 480 (requests round up). When the
  // integer-rounding residual exceeds 1e-6 the computation retries with
  // doubled digits, up to three times.
  int precision_digits = 60;
};

// Integer coefficient sequences with the rounding residual and the precision
// that produced them.
struct SeriesPair {
  std::vector<long long> plus;
  std::vector<long long> minus;
  double residual = 0.0;
  int digits_used = 0;
};

// Coefficients F(k), k = 0..k_max, of the two Poincare series of the quotient
// S^3 / group: F+(k) = m(curl, 2+k), F-(k) = m(curl, -(2+k)).
SeriesPair poincare_F(const IsometryGroup& group, int k_max,
                      const SpaceformOptions& options = {});

// Auxiliary series G+-: G(k) = F+-(k) + F-+(k-2) counts the full coexact
// eigenspace of the lifted connection Laplacian at level k; used as an
// independent consistency check on F.
SeriesPair auxiliary_G(const IsometryGroup& group, int k_max,
                       const SpaceformOptions& options = {});

// Spectrum with lines +-(2+k), k = 0..k_max (zero multiplicities omitted).
Spectrum spaceform_spectrum(const IsometryGroup& group, int k_max,
                            const SpaceformOptions& options = {});

// (m(curl, 2), m(curl, -2)) -- the multiplicities at the smallest possible
// magnitude. Each lies in {0, 1, 2, 3}.
std::pair<long long, long long> smallest_eigenvalue_multiplicities(
    const IsometryGroup& group, const SpaceformOptions& options = {});

// Symmetry of the full spectrum, decided independently of the series
// truncation by sampling sum_{g != 1} (chi+ - chi-)(g) / det(I - z g) at
// interior points; the truncated defect F+(k) - F-(k) is reported alongside
// and cross-checked against the sampled answer.
struct AsymmetryCertificate {
  bool symmetric = false;
  std::vector<long long> defect;  // F+(k) - F-(k), k = 0..k_max
  double sample_max_abs = 0.0;
};
AsymmetryCertificate asymmetry_certificate(const IsometryGroup& group, int k_max,
                                           const SpaceformOptions& options = {});

}  // namespace curlspec

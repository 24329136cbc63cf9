#pragma once

#include "curlspec/spectrum.hpp"

#include <vector>

namespace curlspec {

// Row-major basis of a full-rank lattice in R^n. Entries are stored as exact
// rationals; `exact` records whether the input was given exactly (rational or
// decimal strings) or as raw doubles that look like rounded irrationals. The
// flag only affects how shells are *grouped*: enumeration itself is always
// carried out in exact arithmetic on the (rational) Gram matrix.
struct LatticeBasis {
  int n = 0;
  std::vector<std::vector<Rational>> rows;
  bool exact = true;

  static LatticeBasis identity(int n);
  static LatticeBasis from_strings(const std::vector<std::vector<std::string>>& rows);
  // Doubles are dyadic rationals, so they convert exactly; entries whose
  // reduced denominator exceeds 2^24 are taken to be rounded irrationals and
  // mark the basis as non-exact.
  static LatticeBasis from_doubles(const std::vector<std::vector<double>>& rows);
};

struct TorusOptions {
  double condition_limit = 1e8;          // Frobenius-norm condition estimate cap
  unsigned long long vector_cap = 1ull << 26;  // enumerated lattice vectors
};

// Signed determinant of the basis matrix, exact.
Rational lattice_det(const LatticeBasis& basis);

// Dual basis D with D * B^T = I (rows of D generate the dual lattice).
// Exact; throws ValidationError for singular or badly conditioned bases.
LatticeBasis dual_lattice(const LatticeBasis& basis, const TorusOptions& options = {});

struct Shell {
  Rational q;                // squared norm |mu|^2
  unsigned long long count;  // lattice vectors on the shell
};

// Nonzero vectors of the lattice spanned by `basis` with |mu| <= radius,
// grouped by exact squared norm, ascending. The radius is taken with a
// relative pad of 1e-12 so that a cutoff computed in floating point (for
// example 2*pi*sqrt(3) for a shell at q = 3) includes its boundary shell.
// Branch-and-bound enumeration over the LDL decomposition of the Gram
// matrix; interval endpoints are corrected with exact comparisons, so the
// table is complete and exact. For a non-exact basis, shells closer than a
// relative 1e-9 are merged and `approximate` is set.
struct ShellTable {
  std::vector<Shell> shells;
  bool approximate = false;
};
ShellTable enumerate_shells(const LatticeBasis& basis, double radius,
                            const TorusOptions& options = {});

// Curl spectrum of the flat torus R^n / lattice(basis), n odd >= 3, truncated
// at lambda_max: for each dual shell q the eigenvalues are +-2*pi*sqrt(q)
// with multiplicity binomial(n-1, (n-1)/2)/2 times the shell count.
Spectrum torus_spectrum(const LatticeBasis& basis, double lambda_max,
                        const TorusOptions& options = {});

}  // namespace curlspec

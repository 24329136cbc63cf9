#pragma once

#include "curlspec/exact.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace curlspec {

enum class Family { torus, sphere, spaceform };

std::string family_name(Family f);

// One eigenvalue of curl with its (finite) multiplicity. The eigenvalue 0 has
// an infinite-dimensional eigenspace on every manifold handled here (all
// closed 1-forms plus exact contributions); it is deliberately never stored
// as a line, only mentioned as metadata in the serialized output.
struct SpectralLine {
  ExactScalar lambda;
  long long multiplicity = 0;
};

struct ManifoldDescriptor {
  Family family = Family::sphere;
  int n = 3;                      // odd dimension >= 3
  PiRational volume;              // exact, coeff * pi^pi_pow
  std::vector<long long> betti;   // b_0 .. b_{(n-1)/2}
  long long group_order = 1;      // spherical space forms only
};

// A truncated curl spectrum: every nonzero eigenvalue with |lambda| <=
// truncation is present, with exact multiplicity, sorted ascending.
struct Spectrum {
  ManifoldDescriptor descriptor;
  double truncation = 0.0;
  bool approximate_shells = false;  // torus with non-exact basis input
  std::vector<SpectralLine> lines;
};

// Checks descriptor invariants and line sanity (multiplicity >= 1, lambda != 0,
// |lambda| within truncation up to relative slack 1e-9), merges lines with
// exactly equal eigenvalues, sorts ascending. Throws ValidationError.
Spectrum validate_spectrum(const ManifoldDescriptor& descriptor, double truncation,
                           std::vector<SpectralLine> lines, bool approximate_shells = false);

// N_+(lambda) or N_-(lambda): number of eigenvalues of the given sign with
// 0 < |lambda'| <= lambda, counted with multiplicity. Inclusive at lambda.
// Queries beyond the truncation are refused (ValidationError) -- the spectrum
// simply does not contain that information.
long long counting(const Spectrum& spectrum, int sign, double lambda);

// Multiplicities aggregated by |lambda|, ascending.
struct MagnitudeEntry {
  ExactScalar magnitude;  // positive
  long long plus = 0;     // multiplicity at +|lambda|
  long long minus = 0;    // multiplicity at -|lambda|
};
std::vector<MagnitudeEntry> magnitude_table(const Spectrum& spectrum);

// Pairs (|lambda|, m(+|lambda|) - m(-|lambda|)) with nonzero difference,
// ascending. Empty iff the truncated spectrum is symmetric under lambda ->
// -lambda.
std::vector<std::pair<ExactScalar, long long>> symmetry_defect(const Spectrum& spectrum);

nlohmann::ordered_json spectrum_to_json(const Spectrum& spectrum);
std::string spectrum_to_csv(const Spectrum& spectrum);
Spectrum spectrum_from_json(const nlohmann::json& j);

}  // namespace curlspec

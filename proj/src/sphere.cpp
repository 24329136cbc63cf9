#include "curlspec/sphere.hpp"

#include "curlspec/errors.hpp"

#include <limits>

namespace curlspec {

namespace {

void check_n(int n) {
  if (n < 3 || n % 2 == 0)
    throw ValidationError("sphere dimension must be odd and at least 3, got " + std::to_string(n));
}

}  // namespace

BigInt sphere_multiplicity(int n, int k) {
  check_n(n);
  if (k < 0) throw ValidationError("k must be nonnegative");
  const unsigned h = static_cast<unsigned>((n - 1) / 2);
  BigInt num = factorial(static_cast<unsigned>(n + k));
  BigInt den = factorial(h) * factorial(h) * factorial(static_cast<unsigned>(k)) *
               BigInt(h + 1 + static_cast<unsigned>(k));
  BigInt q, r;
  divide_qr(num, den, q, r);
  if (r != 0)
    throw ResidualError("multiplicity formula did not divide exactly at n = " +
                        std::to_string(n) + ", k = " + std::to_string(k));
  return q;
}

PiRational sphere_volume(int n) {
  check_n(n);
  const unsigned h = static_cast<unsigned>((n - 1) / 2);
  return PiRational{Rational(2, factorial(h)), static_cast<int>(h) + 1};
}

Spectrum sphere_spectrum(int n, int k_max) {
  check_n(n);
  if (k_max < 0) throw ValidationError("k_max must be nonnegative");

  ManifoldDescriptor d;
  d.family = Family::sphere;
  d.n = n;
  d.volume = sphere_volume(n);
  d.betti.assign(static_cast<std::size_t>((n + 1) / 2), 0);
  d.betti[0] = 1;

  const long long base = (n + 1) / 2;
  std::vector<SpectralLine> lines;
  lines.reserve(2 * static_cast<std::size_t>(k_max + 1));
  for (int k = 0; k <= k_max; ++k) {
    BigInt m = sphere_multiplicity(n, k);
    if (m > std::numeric_limits<long long>::max())
      throw ValidationError("multiplicity at k = " + std::to_string(k) +
                            " exceeds the 64-bit line representation");
    const long long mult = m.convert_to<long long>();
    const BigInt lambda = base + k;
    lines.push_back({ExactScalar::from_integer(lambda), mult});
    lines.push_back({ExactScalar::from_integer(-lambda), mult});
  }
  return validate_spectrum(d, static_cast<double>(base + k_max), std::move(lines));
}

}  // namespace curlspec

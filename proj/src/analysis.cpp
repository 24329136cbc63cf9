#include "curlspec/analysis.hpp"

#include "curlspec/errors.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>

namespace curlspec {

namespace {

void check_odd_dimension(int n) {
  if (n < 3 || n % 2 == 0)
    throw ValidationError("dimension n must be odd and at least 3, got " + std::to_string(n));
}

}  // namespace

PiRational weyl_leading_coefficient(int n, const PiRational& volume) {
  check_odd_dimension(n);
  if (volume.coeff <= 0) throw ValidationError("volume must be positive");
  const int h = (n - 1) / 2;
  PiRational c;
  c.coeff = volume.coeff / Rational(BigInt(2 * n) * factorial(static_cast<unsigned>(h)));
  c.pi_pow = volume.pi_pow - (h + 1);
  return c;
}

WeylReport weyl_fit(const Spectrum& spectrum, int samples) {
  if (samples < 2) throw ValidationError("weyl_fit needs at least 2 sample points");
  if (spectrum.lines.empty())
    throw ValidationError("weyl_fit needs a nonempty spectrum");

  const int n = spectrum.descriptor.n;
  WeylReport report;
  report.coefficient = weyl_leading_coefficient(n, spectrum.descriptor.volume);
  const double c = report.coefficient.value();

  const double hi = spectrum.truncation;
  double lo = std::fabs(spectrum.lines.front().lambda.value());
  for (const auto& line : spectrum.lines) lo = std::min(lo, std::fabs(line.lambda.value()));
  if (!(hi >= 2 * lo))
    throw ValidationError(
        "spectrum truncation too small for a growth fit (needs at least twice the smallest "
        "eigenvalue magnitude)");

  const double ratio = std::pow(hi / lo, 1.0 / (samples - 1));
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < samples; ++i) {
    WeylSample s;
    s.lambda = (i == samples - 1) ? hi : lo * std::pow(ratio, i);
    s.n_plus = counting(spectrum, +1, s.lambda);
    s.n_minus = counting(spectrum, -1, s.lambda);
    s.predicted = c * std::pow(s.lambda, n);
    s.rel_error_plus = std::fabs(static_cast<double>(s.n_plus) / s.predicted - 1.0);
    s.rel_error_minus = std::fabs(static_cast<double>(s.n_minus) / s.predicted - 1.0);
    report.samples.push_back(s);

    const double x = std::log(s.lambda);
    const double y = std::log(std::max(std::max(s.rel_error_plus, s.rel_error_minus), 1e-18));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = samples * sxx - sx * sx;
  report.log_slope = denom != 0 ? (samples * sxy - sx * sy) / denom : 0.0;
  return report;
}

CountingIdentityReport counting_identity_check_torus(const LatticeBasis& basis, double lambda,
                                                     const TorusOptions& options) {
  if (!(lambda > 0) || !std::isfinite(lambda))
    throw ValidationError("lambda must be positive and finite");

  // Left side through the full spectrum pipeline.
  const Spectrum sp = torus_spectrum(basis, lambda, options);
  CountingIdentityReport report;
  report.lhs = BigInt(counting(sp, +1, lambda)) + BigInt(counting(sp, -1, lambda));

  // Right side from a direct count of the dual shells: N(0, lambda^2) is the
  // number of nonzero dual vectors mu with 2*pi*|mu| <= lambda, and each
  // p-form Laplacian contributes binom(n,p) copies of it.
  const int n = basis.n;
  check_odd_dimension(n);
  const int h = (n - 1) / 2;
  const LatticeBasis dual = dual_lattice(basis, options);
  const ShellTable table =
      enumerate_shells(dual, lambda / boost::math::constants::two_pi<double>(), options);
  BigInt n0 = 0;
  for (const auto& shell : table.shells) n0 += BigInt(shell.count);

  BigInt alternating = 0;
  for (int p = 0; p <= h; ++p) {
    const BigInt term = binomial(static_cast<unsigned>(n), static_cast<unsigned>(p)) * n0;
    alternating += (p % 2 == 0) ? term : -term;
  }
  report.rhs = (h % 2 == 0) ? alternating : -alternating;
  report.match = report.lhs == report.rhs;
  return report;
}

ZetaPartial zeta_partial(const Spectrum& spectrum, double s) {
  const int n = spectrum.descriptor.n;
  if (!(s > n))
    throw ValidationError("zeta partial sums require s > n = " + std::to_string(n) +
                          " (convergence region)");

  ZetaPartial z;
  z.s = s;
  for (const auto& line : spectrum.lines)
    z.partial += static_cast<double>(line.multiplicity) *
                 std::pow(std::fabs(line.lambda.value()), -s);

  const double c = weyl_leading_coefficient(n, spectrum.descriptor.volume).value();
  z.tail_bound = 2.0 * c * n / (s - n) * std::pow(spectrum.truncation, n - s);
  return z;
}

ZetaZeroReport zeta_at_zero(const ManifoldDescriptor& descriptor) {
  const int n = descriptor.n;
  check_odd_dimension(n);
  const int h = (n - 1) / 2;
  if (descriptor.betti.size() != static_cast<std::size_t>(h + 1))
    throw ValidationError("descriptor must list the Betti numbers b_0 .. b_" + std::to_string(h));

  BigInt alternating = 0;
  for (int p = 0; p <= h; ++p) {
    const BigInt term = descriptor.betti[p];
    alternating += (p % 2 == 0) ? term : -term;
  }
  ZetaZeroReport report;
  report.zeta_zero = (((n + 1) / 2) % 2 == 0) ? alternating : -alternating;
  report.semi_characteristic = static_cast<int>(((report.zeta_zero % 2) + 2) % 2);
  return report;
}

double eta_partial(const Spectrum& spectrum, double s) {
  const int n = spectrum.descriptor.n;
  if (!(s > n))
    throw ValidationError("eta partial sums require s > n = " + std::to_string(n));

  double sum = 0;
  for (const auto& entry : magnitude_table(spectrum))
    sum += static_cast<double>(entry.plus - entry.minus) *
           std::pow(entry.magnitude.value(), -s);
  return sum;
}

std::string bound_kind_name(BoundKind kind) {
  return kind == BoundKind::curvature_operator ? "curvature-operator" : "ricci-3d";
}

BoundKind parse_bound_kind(const std::string& name) {
  if (name == "curvature-operator") return BoundKind::curvature_operator;
  if (name == "ricci-3d") return BoundKind::ricci_3d;
  throw ValidationError("unknown bound kind '" + name +
                        "' (expected curvature-operator or ricci-3d)");
}

BoundReport check_lower_bound(const Spectrum& spectrum, double kappa, BoundKind kind) {
  if (!(kappa > 0) || !std::isfinite(kappa)) throw ValidationError("kappa must be positive");
  const int n = spectrum.descriptor.n;
  if (kind == BoundKind::ricci_3d && n != 3)
    throw ValidationError("the ricci-3d bound applies to n = 3 only");

  BoundReport report;
  report.kappa = kappa;
  report.kind = kind;
  const Rational kappa_exact = rational_from_double(kappa);
  const Rational factor = kind == BoundKind::curvature_operator
                              ? Rational(BigInt(n + 1) * (n + 1), 4)
                              : Rational(4);
  report.bound_squared = kappa_exact * factor;
  report.bound = std::sqrt(to_double(report.bound_squared));

  const double bs = to_double(report.bound_squared);
  report.pass = true;
  bool first = true;
  for (const auto& line : spectrum.lines) {
    const double abs_val = std::fabs(line.lambda.value());
    if (first || abs_val < report.min_abs_lambda) report.min_abs_lambda = abs_val;
    first = false;

    bool below = false, at_bound = false;
    switch (line.lambda.kind()) {
      case ExactScalar::Kind::integer: {
        const BigInt v = line.lambda.int_value();
        const Rational sq(v * v);
        below = sq < report.bound_squared;
        at_bound = sq == report.bound_squared;
        break;
      }
      case ExactScalar::Kind::two_pi_sqrt:
        // 4*pi^2*q is never a rational, so equality with the bound is
        // impossible; only the inequality needs checking.
        below = abs_val * abs_val < bs * (1 - 1e-12);
        break;
      case ExactScalar::Kind::approx:
        at_bound = std::fabs(abs_val - report.bound) <= 1e-9;
        below = !at_bound && abs_val < report.bound;
        break;
    }
    if (below) report.pass = false;
    if (at_bound) {
      if (line.lambda.value() > 0)
        report.mult_plus += line.multiplicity;
      else
        report.mult_minus += line.multiplicity;
    }
  }
  report.attained = report.mult_plus > 0 || report.mult_minus > 0;
  return report;
}

}  // namespace curlspec

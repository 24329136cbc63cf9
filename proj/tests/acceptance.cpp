// Acceptance gate: one line per criterion, exit code = number of failures.
// Each criterion is self-contained and keeps going after a failure so the
// full scorecard always prints.

#include "curlspec/analysis.hpp"
#include "curlspec/errors.hpp"
#include "curlspec/spaceform.hpp"
#include "curlspec/spectrum.hpp"
#include "curlspec/sphere.hpp"
#include "curlspec/torus.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace curlspec;

namespace {

const double kPi = std::acos(-1.0);

int failures = 0;

void run_criterion(int number, const std::string& title,
                   const std::function<std::pair<bool, std::string>()>& body) {
  bool pass = false;
  std::string detail;
  try {
    auto [p, d] = body();
    pass = p;
    detail = d;
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  std::printf("[%s] criterion %d: %s%s%s%s\n", pass ? "PASS" : "FAIL", number, title.c_str(),
              detail.empty() ? "" : " (", detail.c_str(), detail.empty() ? "" : ")");
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

IsometryGroup cyclic(long long q, long long p1, long long p2) {
  return close_group({GroupElement::from_angles(q, p1, p2)});
}

const Mat4 kQuatI = {{{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}}};
const Mat4 kQuatJ = {{{0, 0, -1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, -1, 0, 0}}};

IsometryGroup quaternion8() {
  return close_group({GroupElement::from_matrix(kQuatI), GroupElement::from_matrix(kQuatJ)});
}

// All cyclic groups <R(2*pi*p/q, 2*pi*p'/q)> acting freely, q <= 12: freeness
// of every power needs gcd(p, q) = gcd(p', q) = 1.
std::vector<std::array<long long, 3>> free_cyclic_parameters() {
  std::vector<std::array<long long, 3>> params{{1, 0, 0}};
  for (long long q = 2; q <= 12; ++q)
    for (long long p1 = 1; p1 < q; ++p1) {
      if (std::gcd(p1, q) != 1) continue;
      for (long long p2 = 1; p2 < q; ++p2)
        if (std::gcd(p2, q) == 1) params.push_back({q, p1, p2});
    }
  return params;
}

std::pair<bool, std::string> criterion_lens_multiplicities() {
  const auto start = std::chrono::steady_clock::now();
  const auto [mp, mm] = smallest_eigenvalue_multiplicities(cyclic(3, 1, 1));
  const double elapsed = seconds_since(start);

  const bool pass = mp == 0 && mm == 3 && elapsed < 1.0;
  std::ostringstream detail;
  detail << "computed m(+2) = " << mp << ", m(-2) = " << mm << ", expected (0, 3), "
         << elapsed << " s";
  if (mp == 1)
    detail << "; note: e1^e2 + e3^e4 is invariant under every R(t, t), so the self-dual "
              "invariant subspace of this group is 1-dimensional, which forces m(+2) = 1";
  return {pass, detail.str()};
}

std::pair<bool, std::string> criterion_rp3_closed_form() {
  const auto start = std::chrono::steady_clock::now();
  const SeriesPair f = poincare_F(cyclic(2, 1, 1), 40);
  const double elapsed = seconds_since(start);

  for (int k = 0; k <= 40; ++k) {
    const long long want = (k % 2 == 0) ? 4 * (k / 2 + 1) * (k / 2 + 1) - 1 : 0;
    if (f.plus[k] != want || f.minus[k] != want)
      return {false, "coefficient " + std::to_string(k) + " is " + std::to_string(f.plus[k]) +
                         "/" + std::to_string(f.minus[k]) + ", expected " + std::to_string(want)};
  }
  if (elapsed >= 1.0) return {false, "took " + std::to_string(elapsed) + " s"};
  return {true, "coefficients 0..40 match 4(j+1)^2 - 1 at index 2j, " +
                    std::to_string(elapsed).substr(0, 5) + " s"};
}

std::pair<bool, std::string> criterion_trivial_group_agrees_with_sphere() {
  const Spectrum quotient = spaceform_spectrum(close_group({}), 40);
  const Spectrum sphere = sphere_spectrum(3, 40);
  if (quotient.lines.size() != sphere.lines.size())
    return {false, "line counts differ: " + std::to_string(quotient.lines.size()) + " vs " +
                       std::to_string(sphere.lines.size())};
  for (std::size_t i = 0; i < sphere.lines.size(); ++i) {
    const auto& a = quotient.lines[i];
    const auto& b = sphere.lines[i];
    if (!(a.lambda.kind() == ExactScalar::Kind::integer &&
          a.lambda.int_value() == b.lambda.int_value() && a.multiplicity == b.multiplicity))
      return {false, "line " + std::to_string(i) + " differs: " + a.lambda.str() + " x" +
                         std::to_string(a.multiplicity) + " vs " + b.lambda.str() + " x" +
                         std::to_string(b.multiplicity)};
  }
  return {true, std::to_string(sphere.lines.size()) + " lines match exactly for k <= 40"};
}

std::pair<bool, std::string> criterion_fg_identity() {
  const auto params = free_cyclic_parameters();
  double worst_residual = 0;
  for (const auto& [q, p1, p2] : params) {
    const IsometryGroup g = cyclic(q, p1, p2);
    const SeriesPair f = poincare_F(g, 40);
    const SeriesPair aux = auxiliary_G(g, 40);
    worst_residual = std::max({worst_residual, f.residual, aux.residual});
    for (int k = 0; k <= 40; ++k) {
      const long long lp = f.plus[k] + (k >= 2 ? f.minus[k - 2] : 0);
      const long long lm = f.minus[k] + (k >= 2 ? f.plus[k - 2] : 0);
      if (lp != aux.plus[k] || lm != aux.minus[k])
        return {false, "group (" + std::to_string(q) + ";" + std::to_string(p1) + "," +
                           std::to_string(p2) + ") fails at k = " + std::to_string(k)};
    }
  }
  if (!(worst_residual < 1e-6))
    return {false, "worst rounding residual " + std::to_string(worst_residual)};
  std::ostringstream detail;
  detail << params.size() << " groups through K = 40, worst residual " << worst_residual;
  return {true, detail.str()};
}

std::pair<bool, std::string> criterion_torus_oracle() {
  std::mt19937 rng(20260816);
  const double lambda_max = 20.0;
  for (int trial = 0; trial < 20; ++trial) {
    const LatticeBasis b = oracles::random_rational_basis(rng);
    const Spectrum sp = torus_spectrum(b, lambda_max);

    const auto dual_inv = oracles::rational_inverse(b.rows);
    std::vector<std::vector<Rational>> dual(3, std::vector<Rational>(3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) dual[i][j] = dual_inv[j][i];
    const auto expected = oracles::box_shells(dual, lambda_max / (2 * kPi));

    if (sp.lines.size() != 2 * expected.size())
      return {false, "trial " + std::to_string(trial) + ": " +
                         std::to_string(sp.lines.size()) + " lines vs " +
                         std::to_string(expected.size()) + " oracle shells"};
    std::size_t i = expected.size();  // negative lines come first, descending in q
    std::size_t j = expected.size();
    for (const auto& [q, count] : expected) {
      const auto& neg = sp.lines[--i];
      const auto& pos = sp.lines[j++];
      if (!(neg.lambda.sqrt_arg() == q && pos.lambda.sqrt_arg() == q &&
            neg.multiplicity == static_cast<long long>(count) &&
            pos.multiplicity == static_cast<long long>(count)))
        return {false, "trial " + std::to_string(trial) + ": shell q = " + rational_str(q) +
                           " disagrees with the oracle count " + std::to_string(count)};
    }
  }
  return {true, "20 random rational bases match the box enumeration up to lambda = 20"};
}

std::pair<bool, std::string> criterion_counting_identity() {
  const double cutoffs[3] = {2 * kPi, 2 * kPi * std::sqrt(2.0), 10.0};
  for (int n : {3, 5}) {
    const LatticeBasis b = LatticeBasis::identity(n);
    for (double lambda : cutoffs) {
      const CountingIdentityReport r = counting_identity_check_torus(b, lambda);
      if (!r.match)
        return {false, "Z^" + std::to_string(n) + " at lambda = " + std::to_string(lambda) +
                           ": lhs " + r.lhs.str() + " != rhs " + r.rhs.str()};
    }
  }
  std::mt19937 rng(31337);
  for (int trial = 0; trial < 20; ++trial) {
    const LatticeBasis b = oracles::random_rational_basis(rng);
    const CountingIdentityReport r = counting_identity_check_torus(b, 20.0);
    if (!r.match) return {false, "random basis trial " + std::to_string(trial) + " mismatch"};
  }
  return {true, "exact equality on Z^3, Z^5 at three cutoffs and 20 random lattices"};
}

std::pair<bool, std::string> criterion_weyl_law() {
  const auto start = std::chrono::steady_clock::now();

  const double lambda_t = 100 * kPi;
  const Spectrum torus = torus_spectrum(LatticeBasis::identity(3), lambda_t);
  const double n_plus = static_cast<double>(counting(torus, +1, lambda_t));
  const double n_minus = static_cast<double>(counting(torus, -1, lambda_t));
  const double predicted_t = std::pow(lambda_t, 3) / (6 * kPi * kPi);
  const double err_t =
      std::max(std::fabs(n_plus / predicted_t - 1), std::fabs(n_minus / predicted_t - 1));

  const Spectrum sphere = sphere_spectrum(3, 198);
  const double n_s = static_cast<double>(counting(sphere, +1, 200.0));
  const double err_s = std::fabs(n_s / (std::pow(200.0, 3) / 3) - 1);

  const double elapsed = seconds_since(start);
  std::ostringstream detail;
  detail << "torus rel err " << err_t << " at lambda = 100*pi, sphere rel err " << err_s
         << " at lambda = 200, " << elapsed << " s";
  return {err_t < 0.05 && err_s < 0.02 && elapsed < 10.0, detail.str()};
}

std::pair<bool, std::string> criterion_zeta_zero() {
  const auto t3 = zeta_at_zero(torus_spectrum(LatticeBasis::identity(3), 7.0).descriptor);
  if (t3.zeta_zero != -2 || t3.semi_characteristic != 0)
    return {false, "T^3 gave " + t3.zeta_zero.str()};

  const auto s3 = zeta_at_zero(sphere_spectrum(3, 0).descriptor);
  if (s3.zeta_zero != 1 || s3.semi_characteristic != 1)
    return {false, "S^3 gave " + s3.zeta_zero.str()};

  for (const auto& [q, p1, p2] : free_cyclic_parameters()) {
    const auto z = zeta_at_zero(spaceform_spectrum(cyclic(q, p1, p2), 0).descriptor);
    if (z.zeta_zero != 1 || z.semi_characteristic != 1)
      return {false, "space form (" + std::to_string(q) + ";" + std::to_string(p1) + "," +
                         std::to_string(p2) + ") gave " + z.zeta_zero.str()};
  }
  const auto q8 = zeta_at_zero(spaceform_spectrum(quaternion8(), 0).descriptor);
  if (q8.zeta_zero != 1) return {false, "quaternion quotient gave " + q8.zeta_zero.str()};
  return {true, "T^3 -> -2 (semi-char 0), S^3 -> 1, all tested space forms -> 1"};
}

std::pair<bool, std::string> criterion_curvature_bounds() {
  for (int n : {3, 5, 7}) {
    const Spectrum s = sphere_spectrum(n, 3);
    const BoundReport r = check_lower_bound(s, 1.0, BoundKind::curvature_operator);
    if (!(r.pass && r.attained && r.bound == (n + 1) / 2.0))
      return {false, "S^" + std::to_string(n) + " bound check failed"};
  }

  // Space forms: |lambda| >= 2 with the rigidity pattern for the multiplicity
  // at +-2: (3, 3) exactly for the trivial group and for {+-I}.
  auto check_group = [&](const IsometryGroup& g, bool expect_rigid,
                         const std::string& name) -> std::string {
    const Spectrum sp = spaceform_spectrum(g, 10);
    const BoundReport r = check_lower_bound(sp, 1.0, BoundKind::ricci_3d);
    if (!r.pass) return name + " violates |lambda| >= 2";
    const auto [mp, mm] = smallest_eigenvalue_multiplicities(g);
    const bool rigid = mp == 3 && mm == 3;
    if (rigid != expect_rigid)
      return name + " multiplicity pattern (" + std::to_string(mp) + ", " + std::to_string(mm) +
             ") " + (expect_rigid ? "is not (3, 3)" : "unexpectedly equals (3, 3)");
    return "";
  };

  for (const auto& [q, p1, p2] : free_cyclic_parameters()) {
    const std::string name =
        "(" + std::to_string(q) + ";" + std::to_string(p1) + "," + std::to_string(p2) + ")";
    // order 1 is the trivial group; order 2 forces the generator to be -I
    const std::string err = check_group(cyclic(q, p1, p2), q <= 2, name);
    if (!err.empty()) return {false, err};
  }
  const std::string err = check_group(quaternion8(), false, "quaternion group");
  if (!err.empty()) return {false, err};
  return {true, "spheres n = 3, 5, 7 sharp at (n+1)/2; all space forms >= 2 with the (3, 3) "
                "pattern only for trivial and {+-I}"};
}

std::pair<bool, std::string> criterion_symmetry() {
  if (!symmetry_defect(torus_spectrum(LatticeBasis::identity(3), 15.0)).empty())
    return {false, "Z^3 spectrum has a nonzero defect"};
  if (!symmetry_defect(torus_spectrum(LatticeBasis::identity(5), 7.0)).empty())
    return {false, "Z^5 spectrum has a nonzero defect"};
  std::mt19937 rng(64);
  for (int trial = 0; trial < 5; ++trial) {
    const LatticeBasis b = oracles::random_rational_basis(rng);
    if (!symmetry_defect(torus_spectrum(b, 20.0)).empty())
      return {false, "random torus spectrum has a nonzero defect"};
  }
  for (int n : {3, 5, 7})
    if (!symmetry_defect(sphere_spectrum(n, 20)).empty())
      return {false, "S^" + std::to_string(n) + " spectrum has a nonzero defect"};

  const AsymmetryCertificate lens = asymmetry_certificate(cyclic(3, 1, 1), 10);
  if (lens.symmetric) return {false, "(3;1,1) lens space not marked asymmetric"};
  const AsymmetryCertificate rp3 = asymmetry_certificate(cyclic(2, 1, 1), 10);
  if (!rp3.symmetric) return {false, "RP^3 not marked symmetric"};
  return {true, "all torus and sphere defects empty; (3;1,1) asymmetric, RP^3 symmetric"};
}

std::pair<bool, std::string> criterion_property_suite() {
  // chi class-function and trace identities on 100 random rotations
  std::mt19937 rng(271828);
  for (int trial = 0; trial < 100; ++trial) {
    const Mat4 g = oracles::random_so4(rng);
    const Mat4 h = oracles::random_so4(rng);
    const auto [cp, cm] = chi_pm(GroupElement::from_matrix(g));

    const Mat4 conj = oracles::mat_mul(oracles::mat_mul(h, g), oracles::transpose(h));
    const auto [kp, km] = chi_pm(GroupElement::from_matrix(conj));
    if (std::fabs(kp - cp) > 1e-9 || std::fabs(km - cm) > 1e-9)
      return {false, "chi is not conjugation invariant at trial " + std::to_string(trial)};

    const auto [ip, im] = chi_pm(GroupElement::from_matrix(oracles::transpose(g)));
    if (std::fabs(ip - cp) > 1e-9 || std::fabs(im - cm) > 1e-9)
      return {false, "chi(g^-1) != chi(g) at trial " + std::to_string(trial)};

    double tr = 0, tr2 = 0;
    const Mat4 g2 = oracles::mat_mul(g, g);
    for (int i = 0; i < 4; ++i) {
      tr += g[i][i];
      tr2 += g2[i][i];
    }
    if (std::fabs(cp + cm - (tr * tr - tr2) / 2) > 1e-9)
      return {false, "chi+ + chi- trace identity fails at trial " + std::to_string(trial)};
  }

  // sphere multiplicity integrality (the exact division throws on failure)
  for (int n = 3; n <= 13; n += 2)
    for (int k = 0; k <= 50; ++k)
      if (sphere_multiplicity(n, k) <= 0)
        return {false, "nonpositive multiplicity at n = " + std::to_string(n) +
                           ", k = " + std::to_string(k)};

  // torus scaling law: spectrum(s*B, lambda) = (1/s) * spectrum(B, s*lambda)
  const Rational factors[5] = {Rational(1, 2), Rational(2), Rational(3, 2), Rational(5, 4),
                               Rational(3)};
  std::mt19937 rng2(1618);
  for (const Rational& s : factors) {
    LatticeBasis b = oracles::random_rational_basis(rng2);
    LatticeBasis scaled = b;
    for (auto& row : scaled.rows)
      for (auto& e : row) e *= s;

    const double sd = to_double(s);
    const Spectrum a = torus_spectrum(scaled, 12.0);
    const Spectrum ref = torus_spectrum(b, sd * 12.0);
    if (a.lines.size() != ref.lines.size())
      return {false, "scaling by " + rational_str(s) + " changes the line count"};
    for (std::size_t i = 0; i < a.lines.size(); ++i) {
      if (a.lines[i].multiplicity != ref.lines[i].multiplicity ||
          !(a.lines[i].lambda.sqrt_arg() * s * s == ref.lines[i].lambda.sqrt_arg()))
        return {false, "scaling by " + rational_str(s) + " breaks line " + std::to_string(i)};
    }
  }
  return {true, "chi identities on 100 rotations, sphere integrality n <= 13, k <= 50, "
                "5 scaling factors"};
}

}  // namespace

int main() {
  run_criterion(1, "lens (3;1,1) smallest multiplicities", criterion_lens_multiplicities);
  run_criterion(2, "RP^3 closed form", criterion_rp3_closed_form);
  run_criterion(3, "trivial group agrees with the sphere", criterion_trivial_group_agrees_with_sphere);
  run_criterion(4, "F/G series identity", criterion_fg_identity);
  run_criterion(5, "torus against box enumeration", criterion_torus_oracle);
  run_criterion(6, "counting identity", criterion_counting_identity);
  run_criterion(7, "Weyl growth", criterion_weyl_law);
  run_criterion(8, "zeta(0) and semi-characteristic", criterion_zeta_zero);
  run_criterion(9, "curvature lower bounds and rigidity", criterion_curvature_bounds);
  run_criterion(10, "spectral symmetry", criterion_symmetry);
  run_criterion(11, "property suite", criterion_property_suite);

  if (failures == 0)
    std::printf("all criteria passed\n");
  else
    std::printf("%d criterion(s) failed\n", failures);
  return failures;
}

#include "curlspec/spaceform.hpp"

#include "curlspec/errors.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace curlspec {

namespace {

namespace bmp = boost::multiprecision;
using F60 = bmp::number<bmp::cpp_bin_float<60>>;
using F120 = bmp::number<bmp::cpp_bin_float<120>>;
using F240 = bmp::number<bmp::cpp_bin_float<240>>;
using F480 = bmp::number<bmp::cpp_bin_float<480>>;

constexpr double kResidualGate = 1e-6;

double to_dbl(double x) { return x; }
template <class F>
double to_dbl(const F& x) {
  return x.template convert_to<double>();
}

Mat4 mat_mul(const Mat4& a, const Mat4& b) {
  Mat4 r{};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      const double aik = a[i][k];
      if (aik == 0) continue;
      for (int j = 0; j < 4; ++j) r[i][j] += aik * b[k][j];
    }
  return r;
}

double det4(Mat4 a) {
  double det = 1;
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    if (a[pivot][col] == 0) return 0;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (int r = col + 1; r < 4; ++r) {
      const double f = a[r][col] / a[col][col];
      for (int j = col; j < 4; ++j) a[r][j] -= f * a[col][j];
    }
  }
  return det;
}

AngleTag normalize_tag(long long q, long long p1, long long p2) {
  if (q < 1) throw ValidationError("angle denominator q must be positive");
  p1 %= q;
  if (p1 < 0) p1 += q;
  p2 %= q;
  if (p2 < 0) p2 += q;
  const long long g = std::gcd(q, std::gcd(p1, p2));
  return AngleTag{q / g, p1 / g, p2 / g};
}

AngleTag combine_tags(const AngleTag& a, const AngleTag& b) {
  const long long l = std::lcm(a.q, b.q);
  return normalize_tag(l, a.p1 * (l / a.q) + b.p1 * (l / b.q),
                       a.p2 * (l / a.q) + b.p2 * (l / b.q));
}

Mat4 matrix_from_tag(const AngleTag& t) {
  const double two_pi = boost::math::constants::two_pi<double>();
  const double t1 = two_pi * static_cast<double>(t.p1) / static_cast<double>(t.q);
  const double t2 = two_pi * static_cast<double>(t.p2) / static_cast<double>(t.q);
  Mat4 m{};
  m[0][0] = std::cos(t1);
  m[0][1] = -std::sin(t1);
  m[1][0] = std::sin(t1);
  m[1][1] = std::cos(t1);
  m[2][2] = std::cos(t2);
  m[2][3] = -std::sin(t2);
  m[3][2] = std::sin(t2);
  m[3][3] = std::cos(t2);
  return m;
}

// Working-precision view of an element's matrix; tagged elements are rebuilt
// from their exact angle fractions at the requested precision.
template <class F>
std::array<std::array<F, 4>, 4> matrix_at(const GroupElement& g) {
  std::array<std::array<F, 4>, 4> m{};
  if (g.tag) {
    using std::cos;
    using std::sin;
    const F two_pi = 2 * boost::math::constants::pi<F>();
    const F t1 = two_pi * g.tag->p1 / g.tag->q;
    const F t2 = two_pi * g.tag->p2 / g.tag->q;
    m[0][0] = cos(t1);
    m[0][1] = -sin(t1);
    m[1][0] = sin(t1);
    m[1][1] = cos(t1);
    m[2][2] = cos(t2);
    m[2][3] = -sin(t2);
    m[3][2] = sin(t2);
    m[3][3] = cos(t2);
  } else {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m[i][j] = F(g.m[i][j]);
  }
  return m;
}

// Index pairs of the standard basis e_i ^ e_j, i < j, of Lambda^2 R^4.
constexpr int kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

// chi+ and chi-: traces of the induced action on Lambda^2 restricted to the
// self-dual and anti-self-dual subspaces. Basis vectors (pair index, sign):
//   Lambda+ : (e12 + e34), (e14 + e23), (e13 - e24)
//   Lambda- : (e12 - e34), (e14 - e23), (e13 + e24)
// each of squared norm 2.
template <class F>
std::pair<F, F> chi_pair(const std::array<std::array<F, 4>, 4>& g) {
  F lam2[6][6];
  for (int r = 0; r < 6; ++r) {
    const int a = kPairs[r][0], b = kPairs[r][1];
    for (int c = 0; c < 6; ++c) {
      const int i = kPairs[c][0], j = kPairs[c][1];
      lam2[r][c] = g[a][i] * g[b][j] - g[a][j] * g[b][i];
    }
  }
  // pair indices: e12 = 0, e13 = 1, e14 = 2, e23 = 3, e24 = 4, e34 = 5
  auto quad = [&](int u, int v, int su, int sv) {
    // (w, Lam2 w) for w = su*e_u + sv*e_v
    return F(su * su) * lam2[u][u] + F(su * sv) * (lam2[u][v] + lam2[v][u]) +
           F(sv * sv) * lam2[v][v];
  };
  const F chi_plus = (quad(0, 5, 1, 1) + quad(2, 3, 1, 1) + quad(1, 4, 1, -1)) / 2;
  const F chi_minus = (quad(0, 5, 1, -1) + quad(2, 3, 1, -1) + quad(1, 4, 1, 1)) / 2;
  return {chi_plus, chi_minus};
}

// Coefficients of det(I - z*g) = 1 - e1 z + e2 z^2 - e3 z^3 + e4 z^4 from the
// power traces p_k = tr(g^k) via Newton's identities.
template <class F>
std::array<F, 5> det_poly(const std::array<std::array<F, 4>, 4>& g) {
  using M = std::array<std::array<F, 4>, 4>;
  auto mul = [](const M& a, const M& b) {
    M r{};
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k)
        for (int j = 0; j < 4; ++j) r[i][j] += a[i][k] * b[k][j];
    return r;
  };
  auto tr = [](const M& a) { return a[0][0] + a[1][1] + a[2][2] + a[3][3]; };

  const M g2 = mul(g, g);
  const M g3 = mul(g2, g);
  const M g4 = mul(g2, g2);
  const F p1 = tr(g), p2 = tr(g2), p3 = tr(g3), p4 = tr(g4);
  const F e1 = p1;
  const F e2 = (e1 * p1 - p2) / 2;
  const F e3 = (e2 * p1 - e1 * p2 + p3) / 3;
  const F e4 = (e3 * p1 - e2 * p2 + e1 * p3 - p4) / 4;
  return {F(1), -e1, e2, -e3, e4};
}

template <class F>
struct RawSeries {
  std::vector<F> plus, minus;
};

// Shared accumulation for the F (poincare = true) and G series. Per element
// the rational function num(z) / det(I - z*g) is expanded by the linear
// recurrence b_m = num_m - sum_{i=1..4} d_i b_{m-i}; the group average is
// then finished off with the prefactor (1/(1+z^2) resp. (1-z^2)) and the
// leading 1.
template <class F>
RawSeries<F> raw_series(const IsometryGroup& group, int k_max, bool poincare) {
  const int K = k_max;
  std::vector<F> ap(K + 1, F(0)), am(K + 1, F(0));
  std::vector<F> bp(K + 1), bm(K + 1);
  for (const auto& el : group.elements) {
    const auto m = matrix_at<F>(el);
    const auto [cp, cm] = chi_pair<F>(m);
    const auto d = det_poly<F>(m);
    std::array<F, 3> np{cp - 1, F(0), F(0)};
    std::array<F, 3> nm{cm - 1, F(0), F(0)};
    if (poincare) {
      np[2] = -(cm - 1);
      nm[2] = -(cp - 1);
    }
    for (int k = 0; k <= K; ++k) {
      F vp = k < 3 ? np[k] : F(0);
      F vm = k < 3 ? nm[k] : F(0);
      for (int i = 1; i <= 4 && i <= k; ++i) {
        vp -= d[i] * bp[k - i];
        vm -= d[i] * bm[k - i];
      }
      bp[k] = vp;
      bm[k] = vm;
      ap[k] += vp;
      am[k] += vm;
    }
  }

  const F order = F(static_cast<double>(group.elements.size()));
  RawSeries<F> r;
  r.plus.resize(K + 1);
  r.minus.resize(K + 1);
  for (int k = 0; k <= K; ++k) {
    F sp = ap[k] / order + (k == 0 ? F(1) : F(0));
    F sm = am[k] / order + (k == 0 ? F(1) : F(0));
    if (poincare) {
      r.plus[k] = sp - (k >= 2 ? r.plus[k - 2] : F(0));
      r.minus[k] = sm - (k >= 2 ? r.minus[k - 2] : F(0));
    } else {
      r.plus[k] = sp - (k >= 2 ? ap[k - 2] / order : F(0));
      r.minus[k] = sm - (k >= 2 ? am[k - 2] / order : F(0));
    }
  }
  return r;
}

struct RoundedSeries {
  std::vector<long long> plus, minus;
  double residual = 0.0;
  bool negative = false;
};

template <class F>
RoundedSeries round_series(const RawSeries<F>& raw) {
  RoundedSeries out;
  auto one = [&](const std::vector<F>& src, std::vector<long long>& dst) {
    dst.resize(src.size());
    for (std::size_t i = 0; i < src.size(); ++i) {
      const long long nearest = std::llround(to_dbl(src[i]));
      const double dev = std::fabs(to_dbl(src[i] - F(static_cast<double>(nearest))));
      out.residual = std::max(out.residual, dev);
      if (nearest < 0) out.negative = true;
      dst[i] = nearest;
    }
  };
  one(raw.plus, out.plus);
  one(raw.minus, out.minus);
  return out;
}

template <class F>
RoundedSeries attempt(const IsometryGroup& group, int k_max, bool poincare) {
  return round_series(raw_series<F>(group, k_max, poincare));
}

SeriesPair series_with_escalation(const IsometryGroup& group, int k_max, bool poincare,
                                  const SpaceformOptions& options) {
  if (group.elements.empty()) throw ValidationError("group must contain the identity");
  if (k_max < 0) throw ValidationError("k_max must be nonnegative");
  assert_fixed_point_free(group);

  constexpr int levels[4] = {60, 120, 240, 480};
  int idx = 0;
  while (idx < 4 && levels[idx] < options.precision_digits) ++idx;
  if (idx == 4)
    throw ValidationError("precision_digits beyond the supported ladder 60/120/240/480");

  double last_residual = 0;
  for (; idx < 4; ++idx) {
    RoundedSeries r;
    switch (levels[idx]) {
      case 60: r = attempt<F60>(group, k_max, poincare); break;
      case 120: r = attempt<F120>(group, k_max, poincare); break;
      case 240: r = attempt<F240>(group, k_max, poincare); break;
      default: r = attempt<F480>(group, k_max, poincare); break;
    }
    if (r.negative)
      throw ResidualError(
          "series produced a negative integer coefficient; the group input is inconsistent");
    if (r.residual <= kResidualGate)
      return SeriesPair{std::move(r.plus), std::move(r.minus), r.residual, levels[idx]};
    last_residual = r.residual;
  }
  throw ResidualError("series coefficients failed to round to integers (residual " +
                      std::to_string(last_residual) + " after escalating to 480 digits)");
}

using Key = std::array<long long, 16>;

Key quantized_key(const Mat4& m) {
  Key k{};
  int idx = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) k[idx++] = std::llround(m[i][j] * 1e9);
  return k;
}

}  // namespace

GroupElement GroupElement::identity() {
  GroupElement e;
  e.tag = AngleTag{1, 0, 0};
  for (int i = 0; i < 4; ++i) e.m[i][i] = 1;
  return e;
}

GroupElement GroupElement::from_angles(long long q, long long p1, long long p2) {
  if (q < 1 || q > 1000000)
    throw ValidationError("angle denominator q must lie in [1, 10^6]");
  GroupElement e;
  e.tag = normalize_tag(q, p1, p2);
  e.m = matrix_from_tag(*e.tag);
  return e;
}

GroupElement GroupElement::from_matrix(const Mat4& m) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double s = 0;
      for (int k = 0; k < 4; ++k) s += m[k][i] * m[k][j];
      if (std::fabs(s - (i == j ? 1.0 : 0.0)) > 1e-12)
        throw ValidationError("matrix is not orthogonal to within 1e-12");
    }
  if (std::fabs(det4(m) - 1.0) > 1e-12)
    throw ValidationError("matrix must have determinant 1 (orientation preserving)");
  GroupElement e;
  e.m = m;
  return e;
}

GroupElement multiply(const GroupElement& a, const GroupElement& b) {
  GroupElement r;
  if (a.tag && b.tag) {
    r.tag = combine_tags(*a.tag, *b.tag);
    r.m = matrix_from_tag(*r.tag);  // canonical matrix keeps dedup keys stable
  } else {
    r.m = mat_mul(a.m, b.m);
  }
  return r;
}

IsometryGroup close_group(const std::vector<GroupElement>& generators,
                          const GroupOptions& options) {
  IsometryGroup group;
  std::map<Key, std::size_t> seen;

  auto add = [&](const GroupElement& e) -> bool {
    const Key k = quantized_key(e.m);
    if (seen.count(k)) return false;
    if (group.elements.size() >= options.max_order)
      throw ClosureCapError("group closure exceeded the cap of " +
                            std::to_string(options.max_order) + " elements");
    seen.emplace(k, group.elements.size());
    group.elements.push_back(e);
    return true;
  };

  add(GroupElement::identity());
  for (const auto& g : generators) {
    if (g.tag) {
      add(g);
    } else {
      add(GroupElement::from_matrix(g.m));  // re-validate raw matrices
    }
  }

  // Breadth-first closure: every element of the generated group is a word in
  // the generators, so right-multiplying the worklist by each generator
  // reaches all of it (inverses appear because the group is finite).
  for (std::size_t i = 0; i < group.elements.size(); ++i) {
    for (const auto& g : generators) {
      const GroupElement prod = multiply(group.elements[i], g);
      add(prod);
    }
  }
  return group;
}

void assert_fixed_point_free(const IsometryGroup& group) {
  for (std::size_t i = 1; i < group.elements.size(); ++i) {
    const auto& e = group.elements[i];
    if (e.tag) {
      if (e.tag->p1 == 0 || e.tag->p2 == 0)
        throw ValidationError("element R(2*pi*" + std::to_string(e.tag->p1) + "/" +
                              std::to_string(e.tag->q) + ", 2*pi*" + std::to_string(e.tag->p2) +
                              "/" + std::to_string(e.tag->q) +
                              ") fixes a point on the sphere (a block angle is zero)");
    } else {
      Mat4 d = e.m;
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) d[r][c] = (r == c ? 1.0 : 0.0) - d[r][c];
      if (std::fabs(det4(d)) <= 1e-9)
        throw ValidationError("group element " + std::to_string(i) +
                              " has eigenvalue 1: the action is not fixed-point-free");
    }
  }
}

std::pair<double, double> chi_pm(const GroupElement& g) {
  std::array<std::array<double, 4>, 4> m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = g.m[i][j];
  return chi_pair<double>(m);
}

std::array<double, 5> det_one_minus_z(const GroupElement& g) {
  std::array<std::array<double, 4>, 4> m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = g.m[i][j];
  return det_poly<double>(m);
}

SeriesPair poincare_F(const IsometryGroup& group, int k_max, const SpaceformOptions& options) {
  return series_with_escalation(group, k_max, true, options);
}

SeriesPair auxiliary_G(const IsometryGroup& group, int k_max, const SpaceformOptions& options) {
  return series_with_escalation(group, k_max, false, options);
}

Spectrum spaceform_spectrum(const IsometryGroup& group, int k_max,
                            const SpaceformOptions& options) {
  const SeriesPair f = poincare_F(group, k_max, options);

  ManifoldDescriptor d;
  d.family = Family::spaceform;
  d.n = 3;
  d.volume = PiRational{Rational(2, group.order()), 2};  // vol(S^3)/|G|
  d.betti = {1, 0};
  d.group_order = group.order();

  std::vector<SpectralLine> lines;
  for (int k = 0; k <= k_max; ++k) {
    const BigInt lambda = 2 + k;
    if (f.plus[k] > 0) lines.push_back({ExactScalar::from_integer(lambda), f.plus[k]});
    if (f.minus[k] > 0) lines.push_back({ExactScalar::from_integer(-lambda), f.minus[k]});
  }
  return validate_spectrum(d, static_cast<double>(2 + k_max), std::move(lines));
}

std::pair<long long, long long> smallest_eigenvalue_multiplicities(
    const IsometryGroup& group, const SpaceformOptions& options) {
  const SeriesPair f = poincare_F(group, 0, options);
  const long long mp = f.plus[0], mm = f.minus[0];
  if (mp > 3 || mm > 3)
    throw ResidualError("multiplicity at the smallest eigenvalue exceeded 3; inconsistent group");
  return {mp, mm};
}

AsymmetryCertificate asymmetry_certificate(const IsometryGroup& group, int k_max,
                                           const SpaceformOptions& options) {
  const SeriesPair f = poincare_F(group, k_max, options);

  AsymmetryCertificate cert;
  cert.defect.resize(k_max + 1);
  bool defect_nonzero = false;
  for (int k = 0; k <= k_max; ++k) {
    cert.defect[k] = f.plus[k] - f.minus[k];
    defect_nonzero = defect_nonzero || cert.defect[k] != 0;
  }

  // Truncation-independent check: the full spectrum is symmetric iff
  // H(z) = sum_{g != 1} (chi+ - chi-)(g) / det(I - z g) vanishes identically;
  // sample it at interior points of the disc.
  const F60 points[4] = {F60(1) / 8, F60(1) / 4, F60(3) / 8, F60(1) / 2};
  F60 worst(0);
  for (const F60& z : points) {
    F60 h(0);
    for (std::size_t i = 1; i < group.elements.size(); ++i) {
      const auto m = matrix_at<F60>(group.elements[i]);
      const auto [cp, cm] = chi_pair<F60>(m);
      const auto d = det_poly<F60>(m);
      F60 den(0);
      for (int j = 4; j >= 0; --j) den = den * z + d[j];
      h += (cp - cm) / den;
    }
    using std::abs;
    worst = std::max(worst, F60(abs(h)));
  }
  cert.sample_max_abs = to_dbl(worst);
  cert.symmetric = cert.sample_max_abs <= 1e-20;

  if (cert.symmetric && defect_nonzero)
    throw ResidualError("sampled symmetry certificate contradicts a nonzero series defect");
  return cert;
}

}  // namespace curlspec

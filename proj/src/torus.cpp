#include "curlspec/torus.hpp"

#include "curlspec/errors.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace curlspec {

namespace {

void check_shape(const LatticeBasis& b) {
  if (b.n < 1) throw ValidationError("lattice dimension must be positive");
  if (b.rows.size() != static_cast<std::size_t>(b.n))
    throw ValidationError("basis must have n rows");
  for (const auto& row : b.rows)
    if (row.size() != static_cast<std::size_t>(b.n))
      throw ValidationError("basis rows must have n entries");
}

double frobenius(const std::vector<std::vector<Rational>>& m) {
  double s = 0;
  for (const auto& row : m)
    for (const auto& e : row) {
      const double v = to_double(e);
      s += v * v;
    }
  return std::sqrt(s);
}

// Gauss-Jordan inverse over the rationals.
std::vector<std::vector<Rational>> invert(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw ValidationError("singular basis matrix");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    const Rational p = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

// Q(x) = sum_i d[i] * (x_i + sum_{j>i} c[i][j] x_j)^2
struct QuadForm {
  int n = 0;
  std::vector<Rational> d;
  std::vector<std::vector<Rational>> c;
};

QuadForm decompose(std::vector<std::vector<Rational>> a) {
  QuadForm f;
  f.n = static_cast<int>(a.size());
  f.d.resize(f.n);
  f.c.assign(f.n, std::vector<Rational>(f.n, Rational(0)));
  for (int i = 0; i < f.n; ++i) {
    if (a[i][i] <= 0) throw ValidationError("Gram matrix is not positive definite");
    f.d[i] = a[i][i];
    for (int j = i + 1; j < f.n; ++j) f.c[i][j] = a[i][j] / a[i][i];
    for (int j = i + 1; j < f.n; ++j)
      for (int k = i + 1; k < f.n; ++k) a[j][k] -= f.c[i][j] * a[i][k];
  }
  return f;
}

struct Enumerator {
  QuadForm form;
  Rational cap;  // padded squared radius
  unsigned long long vector_cap;
  unsigned long long seen = 0;
  std::vector<long long> x;
  std::map<Rational, unsigned long long> shells;

  Enumerator(QuadForm f, Rational cap_, unsigned long long vcap)
      : form(std::move(f)), cap(std::move(cap_)), vector_cap(vcap), x(form.n, 0) {}

  void run() { descend(form.n - 1, cap, Rational(0), false); }

  // rem = cap - (terms already fixed); acc = their sum; nonzero: any x_j != 0 yet.
  void descend(int i, const Rational& rem, const Rational& acc, bool nonzero) {
    if (i < 0) {
      if (!nonzero) return;  // skip the zero vector
      if (++seen > vector_cap)
        throw ValidationError("shell enumeration exceeded the configured cap of " +
                              std::to_string(vector_cap) +
                              " lattice vectors; lower the cutoff or raise the cap");
      ++shells[acc];
      return;
    }
    Rational shift(0);
    for (int j = i + 1; j < form.n; ++j)
      if (x[j] != 0) shift += form.c[i][j] * x[j];

    // Double-precision guess for the integer range, then exact trimming.
    const double td = std::sqrt(std::max(0.0, to_double(rem) / to_double(form.d[i])));
    const double cd = to_double(shift);
    auto lo = static_cast<long long>(std::floor(-td - cd)) - 1;
    auto hi = static_cast<long long>(std::ceil(td - cd)) + 1;
    auto term = [&](long long v) {
      const Rational u = Rational(v) + shift;
      return Rational(form.d[i] * u * u);
    };
    while (lo <= hi && term(lo) > rem) ++lo;
    while (hi >= lo && term(hi) > rem) --hi;
    for (long long v = lo; v <= hi; ++v) {
      const Rational t = term(v);
      x[i] = v;
      descend(i - 1, rem - t, acc + t, nonzero || v != 0);
    }
    x[i] = 0;
  }
};

}  // namespace

LatticeBasis LatticeBasis::identity(int n) {
  if (n < 1) throw ValidationError("lattice dimension must be positive");
  LatticeBasis b;
  b.n = n;
  b.rows.assign(n, std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < n; ++i) b.rows[i][i] = 1;
  return b;
}

LatticeBasis LatticeBasis::from_strings(const std::vector<std::vector<std::string>>& rows) {
  LatticeBasis b;
  b.n = static_cast<int>(rows.size());
  for (const auto& row : rows) {
    std::vector<Rational> r;
    r.reserve(row.size());
    for (const auto& e : row) r.push_back(parse_rational(e));
    b.rows.push_back(std::move(r));
  }
  check_shape(b);
  return b;
}

LatticeBasis LatticeBasis::from_doubles(const std::vector<std::vector<double>>& rows) {
  LatticeBasis b;
  b.n = static_cast<int>(rows.size());
  const BigInt denom_cap = BigInt(1) << 24;
  for (const auto& row : rows) {
    std::vector<Rational> r;
    r.reserve(row.size());
    for (double e : row) {
      Rational v = rational_from_double(e);
      if (denominator(v) > denom_cap) b.exact = false;
      r.push_back(std::move(v));
    }
    b.rows.push_back(std::move(r));
  }
  check_shape(b);
  return b;
}

Rational lattice_det(const LatticeBasis& basis) {
  check_shape(basis);
  auto a = basis.rows;
  const int n = basis.n;
  Rational det(1);
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (int r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (int j = col; j < n; ++j) a[r][j] -= f * a[col][j];
    }
  }
  return det;
}

LatticeBasis dual_lattice(const LatticeBasis& basis, const TorusOptions& options) {
  check_shape(basis);
  auto inv = invert(basis.rows);  // throws on singular
  const double cond = frobenius(basis.rows) * frobenius(inv);
  if (!(cond <= options.condition_limit))
    throw ValidationError("basis condition estimate " + std::to_string(cond) +
                          " exceeds the limit " + std::to_string(options.condition_limit));
  LatticeBasis dual;
  dual.n = basis.n;
  dual.exact = basis.exact;
  dual.rows.assign(basis.n, std::vector<Rational>(basis.n));
  for (int i = 0; i < basis.n; ++i)
    for (int j = 0; j < basis.n; ++j) dual.rows[i][j] = inv[j][i];
  return dual;
}

ShellTable enumerate_shells(const LatticeBasis& basis, double radius,
                            const TorusOptions& options) {
  check_shape(basis);
  if (!(radius > 0)) throw ValidationError("enumeration radius must be positive");

  std::vector<std::vector<Rational>> gram(basis.n, std::vector<Rational>(basis.n, Rational(0)));
  for (int i = 0; i < basis.n; ++i)
    for (int j = i; j < basis.n; ++j) {
      Rational s(0);
      for (int k = 0; k < basis.n; ++k) s += basis.rows[i][k] * basis.rows[j][k];
      gram[i][j] = s;
      gram[j][i] = s;
    }

  Rational cap = rational_from_double(radius);
  cap *= cap;
  cap += cap / BigInt(1000000000000LL);  // relative 1e-12 boundary pad

  Enumerator e(decompose(std::move(gram)), std::move(cap), options.vector_cap);
  e.run();

  ShellTable table;
  table.approximate = !basis.exact;
  if (!basis.exact) {
    // Cluster shells closer than a relative 1e-9; keep the smallest q of a
    // cluster as its representative.
    for (const auto& [q, count] : e.shells) {
      if (!table.shells.empty()) {
        const double prev = to_double(table.shells.back().q);
        const double cur = to_double(q);
        if (cur - prev <= 1e-9 * cur) {
          table.shells.back().count += count;
          continue;
        }
      }
      table.shells.push_back({q, count});
    }
  } else {
    for (const auto& [q, count] : e.shells) table.shells.push_back({q, count});
  }
  return table;
}

Spectrum torus_spectrum(const LatticeBasis& basis, double lambda_max,
                        const TorusOptions& options) {
  check_shape(basis);
  if (basis.n < 3 || basis.n % 2 == 0)
    throw ValidationError("torus dimension must be odd and at least 3, got " +
                          std::to_string(basis.n));
  if (!(lambda_max > 0)) throw ValidationError("lambda_max must be positive");

  const double two_pi = boost::math::constants::two_pi<double>();
  LatticeBasis dual = dual_lattice(basis, options);
  ShellTable shells = enumerate_shells(dual, lambda_max / two_pi, options);

  const int n = basis.n;
  const unsigned h = static_cast<unsigned>((n - 1) / 2);
  const BigInt factor = binomial(static_cast<unsigned>(n - 1), h) / 2;

  ManifoldDescriptor d;
  d.family = Family::torus;
  d.n = n;
  Rational det = lattice_det(basis);
  if (det < 0) det = -det;
  d.volume = PiRational{det, 0};
  d.betti.reserve(h + 1);
  for (unsigned p = 0; p <= h; ++p)
    d.betti.push_back(binomial(static_cast<unsigned>(n), p).convert_to<long long>());

  std::vector<SpectralLine> lines;
  lines.reserve(2 * shells.shells.size());
  for (const auto& shell : shells.shells) {
    const BigInt m = factor * shell.count;
    if (m > std::numeric_limits<long long>::max())
      throw ValidationError("shell multiplicity exceeds the 64-bit line representation");
    const long long mult = m.convert_to<long long>();
    lines.push_back({ExactScalar::from_two_pi_sqrt(+1, shell.q), mult});
    lines.push_back({ExactScalar::from_two_pi_sqrt(-1, shell.q), mult});
  }
  return validate_spectrum(d, lambda_max, std::move(lines), shells.approximate);
}

}  // namespace curlspec

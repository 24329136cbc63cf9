#include "curlspec/jobs.hpp"

#include "curlspec/analysis.hpp"
#include "curlspec/errors.hpp"
#include "curlspec/spaceform.hpp"
#include "curlspec/spectrum.hpp"
#include "curlspec/sphere.hpp"
#include "curlspec/torus.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace curlspec {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

enum class Source { torus, sphere, spaceform };

Source resolve_source(const JobSpec& job) {
  if (job.angles && job.matrices)
    throw ValidationError("--angles and --matrices are mutually exclusive");
  int count = 0;
  if (job.basis) ++count;
  if (job.n) ++count;
  if (job.angles || job.matrices) ++count;
  if (count != 1)
    throw ValidationError(
        "exactly one manifold source is required: --basis (torus), --n (sphere), or "
        "--angles/--matrices (space form)");
  if (job.basis) return Source::torus;
  if (job.n) return Source::sphere;
  return Source::spaceform;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError("malformed JSON in '" + path + "': " + e.what());
  }
}

LatticeBasis load_basis(const std::string& text) {
  if (text.rfind("identity", 0) == 0) {
    const std::string digits = text.substr(8);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw ValidationError("malformed basis shorthand '" + text + "' (expected identity<n>)");
    return LatticeBasis::identity(std::stoi(digits));
  }

  json j = read_json_file(text);
  if (j.is_object() && j.contains("rows")) j = j["rows"];
  if (!j.is_array() || j.empty())
    throw ValidationError("basis file must hold an array of rows (or {\"rows\": [...]})");

  bool any_string = false, any_number = false;
  for (const auto& row : j) {
    if (!row.is_array()) throw ValidationError("basis rows must be arrays");
    for (const auto& e : row) {
      if (e.is_string())
        any_string = true;
      else if (e.is_number())
        any_number = true;
      else
        throw ValidationError("basis entries must be numbers or rational strings");
    }
  }
  if (any_string && any_number)
    throw ValidationError("basis entries must be all strings or all numbers, not a mix");

  if (any_string) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : j) rows.push_back(row.get<std::vector<std::string>>());
    return LatticeBasis::from_strings(rows);
  }
  std::vector<std::vector<double>> rows;
  for (const auto& row : j) rows.push_back(row.get<std::vector<double>>());
  return LatticeBasis::from_doubles(rows);
}

long long parse_ll(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("malformed " + what + " '" + text + "'");
  }
}

std::vector<GroupElement> parse_angle_generators(const std::string& text) {
  std::vector<GroupElement> gens;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    const auto colon = item.find(':');
    const auto comma = item.find(',', colon == std::string::npos ? 0 : colon);
    if (colon == std::string::npos || comma == std::string::npos)
      throw ValidationError("malformed angle generator '" + item + "' (expected q:p1,p2)");
    const long long q = parse_ll(item.substr(0, colon), "angle denominator");
    const long long p1 = parse_ll(item.substr(colon + 1, comma - colon - 1), "angle numerator");
    const long long p2 = parse_ll(item.substr(comma + 1), "angle numerator");
    gens.push_back(GroupElement::from_angles(q, p1, p2));
  }
  if (gens.empty()) throw ValidationError("--angles lists no generators");
  return gens;
}

std::vector<GroupElement> parse_matrix_generators(const std::string& path) {
  json j = read_json_file(path);
  if (j.is_object() && j.contains("matrices")) j = j["matrices"];
  if (!j.is_array() || j.empty())
    throw ValidationError("matrix file must hold an array of 4x4 matrices");
  std::vector<GroupElement> gens;
  for (const auto& mj : j) {
    if (!mj.is_array() || mj.size() != 4)
      throw ValidationError("group matrices must be 4x4 arrays");
    Mat4 m{};
    for (int r = 0; r < 4; ++r) {
      if (!mj[r].is_array() || mj[r].size() != 4)
        throw ValidationError("group matrices must be 4x4 arrays");
      for (int c = 0; c < 4; ++c) {
        if (!mj[r][c].is_number()) throw ValidationError("matrix entries must be numbers");
        m[r][c] = mj[r][c].get<double>();
      }
    }
    gens.push_back(GroupElement::from_matrix(m));
  }
  return gens;
}

IsometryGroup load_group(const JobSpec& job) {
  const auto gens =
      job.angles ? parse_angle_generators(*job.angles) : parse_matrix_generators(*job.matrices);
  return close_group(gens);
}

int require_kmax(const JobSpec& job) {
  if (!job.kmax) throw ValidationError("--kmax is required for this command");
  if (*job.kmax < 0) throw ValidationError("--kmax must be nonnegative");
  return *job.kmax;
}

double require_lmax(const JobSpec& job) {
  if (!job.lmax) throw ValidationError("--lmax is required for this command");
  if (!(*job.lmax > 0)) throw ValidationError("--lmax must be positive");
  return *job.lmax;
}

double require_s(const JobSpec& job) {
  if (!job.s) throw ValidationError("--s is required for this command");
  return *job.s;
}

SpaceformOptions spaceform_options(const JobSpec& job) {
  SpaceformOptions o;
  o.precision_digits = job.precision_digits;
  return o;
}

Spectrum build_spectrum(const JobSpec& job, Source src) {
  switch (src) {
    case Source::torus:
      return torus_spectrum(load_basis(*job.basis), require_lmax(job));
    case Source::sphere:
      return sphere_spectrum(*job.n, require_kmax(job));
    case Source::spaceform:
      return spaceform_spectrum(load_group(job), require_kmax(job), spaceform_options(job));
  }
  throw ValidationError("unreachable manifold source");
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void check_format(const JobSpec& job, bool csv_supported) {
  if (job.format != "json" && job.format != "csv")
    throw ValidationError("unknown format '" + job.format + "' (expected json or csv)");
  if (job.format == "csv" && !csv_supported)
    throw ValidationError("csv output is not defined for this command");
}

std::string finish(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string run_spectrum_command(const JobSpec& job, Source expected) {
  const Source src = resolve_source(job);
  if (src != expected)
    throw ValidationError("manifold source does not match the '" + command_name(job.command) +
                          "' command");
  check_format(job, true);

  if (expected == Source::spaceform) {
    const IsometryGroup group = load_group(job);
    const int k_max = require_kmax(job);
    const SpaceformOptions opts = spaceform_options(job);
    const Spectrum sp = spaceform_spectrum(group, k_max, opts);
    if (job.format == "csv") return spectrum_to_csv(sp);

    const SeriesPair f = poincare_F(group, k_max, opts);
    const AsymmetryCertificate cert = asymmetry_certificate(group, k_max, opts);
    ordered_json j = spectrum_to_json(sp);
    j["series"] = {{"digits_used", f.digits_used},
                   {"residual", f.residual},
                   {"plus", f.plus},
                   {"minus", f.minus}};
    j["m_smallest"] = {{"plus", f.plus[0]}, {"minus", f.minus[0]}};
    j["symmetric"] = cert.symmetric;
    j["defect"] = cert.defect;
    j["sample_max_abs"] = cert.sample_max_abs;
    return finish(j);
  }

  const Spectrum sp = build_spectrum(job, src);
  if (job.format == "csv") return spectrum_to_csv(sp);
  return finish(spectrum_to_json(sp));
}

std::string run_weyl(const JobSpec& job) {
  const Spectrum sp = build_spectrum(job, resolve_source(job));
  check_format(job, true);
  const WeylReport r = weyl_fit(sp);

  if (job.format == "csv") {
    std::string out = "lambda,rel_error\n";
    for (const auto& s : r.samples) {
      out += fmt_double(s.lambda);
      out += ',';
      out += fmt_double(std::max(s.rel_error_plus, s.rel_error_minus));
      out += '\n';
    }
    return out;
  }

  ordered_json j;
  j["coefficient"] = {{"exact", r.coefficient.str()}, {"float", r.coefficient.value()}};
  auto samples = ordered_json::array();
  for (const auto& s : r.samples)
    samples.push_back({{"lambda", s.lambda},
                       {"n_plus", s.n_plus},
                       {"n_minus", s.n_minus},
                       {"predicted", s.predicted},
                       {"rel_error_plus", s.rel_error_plus},
                       {"rel_error_minus", s.rel_error_minus}});
  j["samples"] = std::move(samples);
  j["log_slope"] = r.log_slope;
  return finish(j);
}

std::string run_zeta(const JobSpec& job) {
  check_format(job, false);
  const Spectrum sp = build_spectrum(job, resolve_source(job));
  const ZetaPartial z = zeta_partial(sp, require_s(job));
  const ZetaZeroReport z0 = zeta_at_zero(sp.descriptor);

  ordered_json j;
  j["s"] = z.s;
  j["partial"] = z.partial;
  j["tail_bound"] = z.tail_bound;
  j["zeta_zero"] = static_cast<long long>(z0.zeta_zero);
  j["semi_characteristic"] = z0.semi_characteristic;
  return finish(j);
}

std::string run_eta(const JobSpec& job) {
  check_format(job, false);
  const Spectrum sp = build_spectrum(job, resolve_source(job));
  const double s = require_s(job);

  ordered_json j;
  j["s"] = s;
  j["partial"] = eta_partial(sp, s);
  auto defects = ordered_json::array();
  for (const auto& [mag, diff] : symmetry_defect(sp))
    defects.push_back(
        {{"magnitude_exact", mag.str()}, {"magnitude_float", mag.value()}, {"defect", diff}});
  j["defect"] = std::move(defects);
  return finish(j);
}

std::string run_bounds(const JobSpec& job) {
  check_format(job, false);
  const Spectrum sp = build_spectrum(job, resolve_source(job));
  if (!job.kappa) throw ValidationError("--kappa is required for the bounds command");
  if (!job.kind) throw ValidationError("--kind is required for the bounds command");
  const BoundReport r = check_lower_bound(sp, *job.kappa, parse_bound_kind(*job.kind));

  ordered_json j;
  j["kappa"] = r.kappa;
  j["kind"] = bound_kind_name(r.kind);
  j["bound"] = r.bound;
  j["bound_squared_exact"] = rational_str(r.bound_squared);
  j["min_abs_lambda"] = r.min_abs_lambda;
  j["pass"] = r.pass;
  j["attained"] = r.attained;
  j["multiplicity_at_plus_bound"] = r.mult_plus;
  j["multiplicity_at_minus_bound"] = r.mult_minus;
  return finish(j);
}

std::string run_crosscheck(const JobSpec& job) {
  check_format(job, false);
  const Source src = resolve_source(job);

  if (src == Source::torus) {
    const double lambda = require_lmax(job);
    const CountingIdentityReport r =
        counting_identity_check_torus(load_basis(*job.basis), lambda);
    if (!r.match)
      throw ResidualError("counting identity mismatch at lambda = " + fmt_double(lambda) +
                          ": lhs = " + r.lhs.str() + ", rhs = " + r.rhs.str());
    ordered_json j;
    j["check"] = "counting-identity";
    j["lambda"] = lambda;
    j["lhs"] = static_cast<long long>(r.lhs);
    j["rhs"] = static_cast<long long>(r.rhs);
    j["match"] = r.match;
    return finish(j);
  }

  if (src == Source::spaceform) {
    const int k_max = require_kmax(job);
    const SpaceformOptions opts = spaceform_options(job);
    const IsometryGroup group = load_group(job);
    const SeriesPair f = poincare_F(group, k_max, opts);
    const SeriesPair g = auxiliary_G(group, k_max, opts);
    for (int k = 0; k <= k_max; ++k) {
      const long long lp = f.plus[k] + (k >= 2 ? f.minus[k - 2] : 0);
      const long long lm = f.minus[k] + (k >= 2 ? f.plus[k - 2] : 0);
      if (lp != g.plus[k] || lm != g.minus[k])
        throw ResidualError("series identity F+ + z^2 F- = G+ (and its twin) fails at k = " +
                            std::to_string(k));
    }
    ordered_json j;
    j["check"] = "series-identity";
    j["kmax"] = k_max;
    j["match"] = true;
    j["residual"] = std::max(f.residual, g.residual);
    j["digits_used"] = std::max(f.digits_used, g.digits_used);
    return finish(j);
  }

  // Sphere: the space-form series with the trivial group must reproduce the
  // closed-form multiplicities (n = 3 only, where both routes exist).
  if (*job.n != 3)
    throw ValidationError("the sphere crosscheck compares against the space-form series and "
                          "is defined for n = 3 only");
  const int k_max = require_kmax(job);
  const IsometryGroup trivial = close_group({GroupElement::identity()});
  const SeriesPair f = poincare_F(trivial, k_max, spaceform_options(job));
  for (int k = 0; k <= k_max; ++k) {
    const BigInt want = sphere_multiplicity(3, k);
    if (BigInt(f.plus[k]) != want || BigInt(f.minus[k]) != want)
      throw ResidualError("trivial-group series disagrees with the sphere formula at k = " +
                          std::to_string(k));
  }
  ordered_json j;
  j["check"] = "sphere-series-agreement";
  j["kmax"] = k_max;
  j["match"] = true;
  return finish(j);
}

std::string dispatch(const JobSpec& job) {
  switch (job.command) {
    case Command::torus: return run_spectrum_command(job, Source::torus);
    case Command::sphere: return run_spectrum_command(job, Source::sphere);
    case Command::spaceform: return run_spectrum_command(job, Source::spaceform);
    case Command::weyl: return run_weyl(job);
    case Command::zeta: return run_zeta(job);
    case Command::eta: return run_eta(job);
    case Command::bounds: return run_bounds(job);
    case Command::crosscheck: return run_crosscheck(job);
  }
  throw ValidationError("unknown command");
}

}  // namespace

std::string command_name(Command c) {
  switch (c) {
    case Command::torus: return "torus";
    case Command::sphere: return "sphere";
    case Command::spaceform: return "spaceform";
    case Command::weyl: return "weyl";
    case Command::zeta: return "zeta";
    case Command::eta: return "eta";
    case Command::bounds: return "bounds";
    case Command::crosscheck: return "crosscheck";
  }
  return "unknown";
}

JobResult run(const JobSpec& job) {
  try {
    return JobResult{exit_ok, dispatch(job)};
  } catch (const Error& e) {
    ordered_json j;
    j["error"] = {{"kind", e.kind()}, {"message", e.what()}};
    return JobResult{e.exit_code(), j.dump() + "\n"};
  } catch (const std::exception& e) {
    ordered_json j;
    j["error"] = {{"kind", "internal"}, {"message", e.what()}};
    return JobResult{exit_internal, j.dump() + "\n"};
  }
}

}  // namespace curlspec

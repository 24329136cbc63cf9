#include "curlspec/spectrum.hpp"

#include "curlspec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace curlspec {

namespace {

std::string csv_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void check_descriptor(const ManifoldDescriptor& d) {
  if (d.n < 3 || d.n % 2 == 0)
    throw ValidationError("dimension must be odd and at least 3, got " + std::to_string(d.n));
  if (d.volume.coeff <= 0) throw ValidationError("volume must be positive");
  const std::size_t want = static_cast<std::size_t>((d.n + 1) / 2);
  if (d.betti.size() != want)
    throw ValidationError("betti vector must list b_0..b_" + std::to_string((d.n - 1) / 2));
  if (d.betti[0] != 1) throw ValidationError("b_0 must be 1 for a connected manifold");
  for (long long b : d.betti)
    if (b < 0) throw ValidationError("betti numbers must be nonnegative");
  if (d.group_order < 1) throw ValidationError("group order must be positive");
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::torus: return "torus";
    case Family::sphere: return "sphere";
    case Family::spaceform: return "spaceform";
  }
  return "?";
}

Spectrum validate_spectrum(const ManifoldDescriptor& descriptor, double truncation,
                           std::vector<SpectralLine> lines, bool approximate_shells) {
  check_descriptor(descriptor);
  if (!(truncation > 0)) throw ValidationError("truncation must be positive");

  const double cap = truncation * (1 + 1e-9);
  for (const auto& line : lines) {
    if (line.multiplicity <= 0)
      throw ValidationError("line at lambda = " + line.lambda.str() +
                            " has nonpositive multiplicity");
    if (line.lambda.is_zero())
      throw ValidationError(
          "eigenvalue 0 has an infinite-dimensional eigenspace and is not stored as a line");
    if (std::fabs(line.lambda.value()) > cap)
      throw ValidationError("line at lambda = " + line.lambda.str() +
                            " lies beyond the truncation " + csv_double(truncation));
  }

  std::sort(lines.begin(), lines.end(),
            [](const SpectralLine& a, const SpectralLine& b) {
              return exact_less(a.lambda, b.lambda);
            });

  std::vector<SpectralLine> merged;
  merged.reserve(lines.size());
  for (auto& line : lines) {
    if (!merged.empty() && merged.back().lambda.equals(line.lambda)) {
      merged.back().multiplicity += line.multiplicity;
    } else {
      merged.push_back(std::move(line));
    }
  }

  Spectrum s;
  s.descriptor = descriptor;
  s.truncation = truncation;
  s.approximate_shells = approximate_shells;
  s.lines = std::move(merged);
  return s;
}

long long counting(const Spectrum& spectrum, int sign, double lambda) {
  if (sign != 1 && sign != -1) throw ValidationError("sign must be +1 or -1");
  if (!(lambda > 0)) throw ValidationError("counting cutoff must be positive");
  if (lambda > spectrum.truncation * (1 + 1e-9))
    throw ValidationError("counting query at " + std::to_string(lambda) +
                          " exceeds the spectrum truncation " +
                          std::to_string(spectrum.truncation) +
                          "; recompute the spectrum with a larger cutoff");
  long long total = 0;
  for (const auto& line : spectrum.lines) {
    const double v = line.lambda.value();
    if (sign > 0 ? (v > 0 && v <= lambda) : (v < 0 && -v <= lambda)) total += line.multiplicity;
  }
  return total;
}

std::vector<MagnitudeEntry> magnitude_table(const Spectrum& spectrum) {
  std::vector<MagnitudeEntry> table;
  for (const auto& line : spectrum.lines) {
    const bool positive = line.lambda.value() > 0;
    ExactScalar mag = line.lambda.magnitude();
    auto it = std::find_if(table.begin(), table.end(), [&](const MagnitudeEntry& e) {
      return e.magnitude.equals(mag);
    });
    if (it == table.end()) {
      table.push_back({mag, 0, 0});
      it = std::prev(table.end());
    }
    (positive ? it->plus : it->minus) += line.multiplicity;
  }
  std::sort(table.begin(), table.end(), [](const MagnitudeEntry& a, const MagnitudeEntry& b) {
    return exact_less(a.magnitude, b.magnitude);
  });
  return table;
}

std::vector<std::pair<ExactScalar, long long>> symmetry_defect(const Spectrum& spectrum) {
  std::vector<std::pair<ExactScalar, long long>> defect;
  for (const auto& entry : magnitude_table(spectrum))
    if (entry.plus != entry.minus) defect.emplace_back(entry.magnitude, entry.plus - entry.minus);
  return defect;
}

nlohmann::ordered_json spectrum_to_json(const Spectrum& spectrum) {
  const auto& d = spectrum.descriptor;
  nlohmann::ordered_json j;
  j["family"] = family_name(d.family);
  j["n"] = d.n;
  j["volume"] = d.volume.value();
  j["volume_exact"] = {{"coeff", rational_str(d.volume.coeff)}, {"pi_pow", d.volume.pi_pow}};
  j["betti"] = d.betti;
  if (d.family == Family::spaceform) j["group_order"] = d.group_order;
  j["truncation"] = spectrum.truncation;
  j["kernel"] = "eigenvalue 0 omitted (infinite-dimensional eigenspace)";
  if (d.family == Family::torus) j["approximate_shells"] = spectrum.approximate_shells;
  auto lines = nlohmann::ordered_json::array();
  for (const auto& line : spectrum.lines) {
    nlohmann::ordered_json l;
    l["lambda_exact"] = line.lambda.str();
    l["lambda_float"] = line.lambda.value();
    l["multiplicity"] = line.multiplicity;
    if (line.lambda.kind() == ExactScalar::Kind::two_pi_sqrt)
      l["shell_q"] = rational_str(line.lambda.sqrt_arg());
    lines.push_back(std::move(l));
  }
  j["lines"] = std::move(lines);
  return j;
}

std::string spectrum_to_csv(const Spectrum& spectrum) {
  std::string out = "lambda,multiplicity\n";
  for (const auto& line : spectrum.lines) {
    out += csv_double(line.lambda.value());
    out += ',';
    out += std::to_string(line.multiplicity);
    out += '\n';
  }
  return out;
}

Spectrum spectrum_from_json(const nlohmann::json& j) {
  try {
    ManifoldDescriptor d;
    const std::string fam = j.at("family").get<std::string>();
    if (fam == "torus")
      d.family = Family::torus;
    else if (fam == "sphere")
      d.family = Family::sphere;
    else if (fam == "spaceform")
      d.family = Family::spaceform;
    else
      throw ValidationError("unknown family '" + fam + "'");
    d.n = j.at("n").get<int>();
    if (j.contains("volume_exact")) {
      d.volume.coeff = parse_rational(j["volume_exact"].at("coeff").get<std::string>());
      d.volume.pi_pow = j["volume_exact"].at("pi_pow").get<int>();
    } else {
      d.volume.coeff = rational_from_double(j.at("volume").get<double>());
      d.volume.pi_pow = 0;
    }
    d.betti = j.at("betti").get<std::vector<long long>>();
    if (j.contains("group_order")) d.group_order = j["group_order"].get<long long>();

    std::vector<SpectralLine> lines;
    for (const auto& l : j.at("lines")) {
      std::optional<ExactScalar> lambda;
      if (l.contains("lambda_exact")) {
        lambda = ExactScalar::parse(l["lambda_exact"].get<std::string>());
        if (!lambda)
          throw ValidationError("unparsable lambda_exact '" +
                                l["lambda_exact"].get<std::string>() + "'");
      } else {
        lambda = ExactScalar::from_approx(l.at("lambda_float").get<double>());
      }
      lines.push_back({*lambda, l.at("multiplicity").get<long long>()});
    }
    return validate_spectrum(d, j.at("truncation").get<double>(), std::move(lines),
                             j.value("approximate_shells", false));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed spectrum JSON: ") + e.what());
  }
}

}  // namespace curlspec

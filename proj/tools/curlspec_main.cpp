#include "curlspec/errors.hpp"
#include "curlspec/jobs.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <utility>

namespace {

void add_flags(CLI::App* cmd, curlspec::JobSpec& job) {
  cmd->add_option("--n", job.n, "sphere dimension (odd, at least 3)");
  cmd->add_option("--kmax", job.kmax, "series truncation index k_max");
  cmd->add_option("--lmax", job.lmax, "eigenvalue magnitude cutoff (torus); lambda (crosscheck)");
  cmd->add_option("--basis", job.basis, "lattice basis: identity<n> or a JSON file of rows");
  cmd->add_option("--angles", job.angles, "space-form generators 'q:p1,p2', ';'-separated");
  cmd->add_option("--matrices", job.matrices, "JSON file with 4x4 SO(4) generator matrices");
  cmd->add_option("--kappa", job.kappa, "curvature constant for the bounds command");
  cmd->add_option("--kind", job.kind, "bound kind: curvature-operator | ricci-3d");
  cmd->add_option("--s", job.s, "zeta/eta exponent (must satisfy s > n)");
  cmd->add_option("--format", job.format, "output format: json | csv");
  cmd->add_option("--precision-digits", job.precision_digits,
                  "starting working precision for space-form series (ladder 60/120/240/480)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "curlspec: exact curl spectra on flat tori, round spheres, and 3-dimensional "
      "spherical space forms, with counting, zeta/eta, and curvature-bound reports"};
  app.require_subcommand(1);

  curlspec::JobSpec job;
  const std::pair<const char*, curlspec::Command> commands[] = {
      {"torus", curlspec::Command::torus},
      {"sphere", curlspec::Command::sphere},
      {"spaceform", curlspec::Command::spaceform},
      {"weyl", curlspec::Command::weyl},
      {"zeta", curlspec::Command::zeta},
      {"eta", curlspec::Command::eta},
      {"bounds", curlspec::Command::bounds},
      {"crosscheck", curlspec::Command::crosscheck},
  };
  const char* const descriptions[] = {
      "spectrum of a flat torus R^n / lattice",
      "spectrum of the round unit sphere S^n",
      "spectrum of S^3 / Gamma for a finite fixed-point-free group",
      "counting-function growth against the predicted leading coefficient",
      "zeta partial sum, tail bound, zeta(0) and semi-characteristic",
      "eta partial sum and spectral symmetry defect",
      "curvature lower-bound check with rigidity multiplicities",
      "independent consistency checks (counting identity / series identities)",
  };
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    CLI::App* sub = app.add_subcommand(commands[i].first, descriptions[i]);
    add_flags(sub, job);
    const curlspec::Command c = commands[i].second;
    sub->callback([&job, c] { job.command = c; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    nlohmann::ordered_json j;
    j["error"] = {{"kind", "validation"}, {"message", e.what()}};
    std::fprintf(stderr, "%s\n", j.dump().c_str());
    return curlspec::exit_validation;
  }

  const curlspec::JobResult result = curlspec::run(job);
  std::fputs(result.output.c_str(), result.exit_code == 0 ? stdout : stderr);
  return result.exit_code;
}

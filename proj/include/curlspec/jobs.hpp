#pragma once

#include <optional>
#include <string>

namespace curlspec {

// The batch commands exposed by the CLI, one computation per invocation.
enum class Command { torus, sphere, spaceform, weyl, zeta, eta, bounds, crosscheck };

std::string command_name(Command c);

// One fully described batch job, mirroring the CLI flags. Exactly one
// manifold source must be set: `basis` (torus), `n` (sphere), or
// `angles`/`matrices` (spherical space form).
struct JobSpec {
  Command command = Command::sphere;

  std::optional<std::string> basis;     // lattice: "identity<n>" or a JSON file path
  std::optional<int> n;                 // sphere dimension
  std::optional<std::string> angles;    // space form: "q:p1,p2" generators, ';'-separated
  std::optional<std::string> matrices;  // space form: JSON file with 4x4 generators

  std::optional<int> kmax;      // sphere / space-form truncation index
  std::optional<double> lmax;   // torus eigenvalue cutoff; crosscheck lambda
  std::optional<double> kappa;  // bounds: curvature constant
  std::optional<std::string> kind;  // bounds: "curvature-operator" | "ricci-3d"
  std::optional<double> s;      // zeta / eta exponent

  std::string format = "json";  // "json" | "csv"
  int precision_digits = 60;    // space-form series starting precision
};

struct JobResult {
  int exit_code = 0;
  std::string output;  // serialized report, or a one-line error record
};

// Runs the job and never throws: failures become a one-line JSON error
// record {"error":{"kind":...,"message":...}} with the matching exit code.
// Identical specs produce byte-identical output.
JobResult run(const JobSpec& job);

}  // namespace curlspec

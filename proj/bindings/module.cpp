#include "curlspec/analysis.hpp"
#include "curlspec/errors.hpp"
#include "curlspec/jobs.hpp"
#include "curlspec/spaceform.hpp"
#include "curlspec/spectrum.hpp"
#include "curlspec/sphere.hpp"
#include "curlspec/torus.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace curlspec;

namespace {

// Big integers cross into python losslessly through their decimal string.
py::object to_py_int(const BigInt& v) {
  return py::module_::import("builtins").attr("int")(v.str());
}

SpaceformOptions options_for(int precision_digits) {
  SpaceformOptions o;
  o.precision_digits = precision_digits;
  return o;
}

py::dict series_dict(const SeriesPair& s) {
  py::dict d;
  d["plus"] = s.plus;
  d["minus"] = s.minus;
  d["residual"] = s.residual;
  d["digits_used"] = s.digits_used;
  return d;
}

Command parse_command(const std::string& name) {
  for (Command c : {Command::torus, Command::sphere, Command::spaceform, Command::weyl,
                    Command::zeta, Command::eta, Command::bounds, Command::crosscheck})
    if (command_name(c) == name) return c;
  throw ValidationError("unknown command '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Exact curl spectra on flat tori, round spheres, and 3-dimensional spherical space "
      "forms, with counting, zeta/eta, and curvature-bound reports.";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ValidationError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const Error& e) {
      PyErr_SetString(PyExc_RuntimeError, e.what());
    }
  });

  py::class_<SpectralLine>(m, "SpectralLine")
      .def_property_readonly("lambda_exact",
                             [](const SpectralLine& l) { return l.lambda.str(); })
      .def_property_readonly("value", [](const SpectralLine& l) { return l.lambda.value(); })
      .def_readonly("multiplicity", &SpectralLine::multiplicity)
      .def("__repr__", [](const SpectralLine& l) {
        return "SpectralLine(" + l.lambda.str() + ", m=" + std::to_string(l.multiplicity) + ")";
      });

  py::class_<Spectrum>(m, "Spectrum")
      .def_property_readonly(
          "family", [](const Spectrum& s) { return family_name(s.descriptor.family); })
      .def_property_readonly("n", [](const Spectrum& s) { return s.descriptor.n; })
      .def_property_readonly("volume",
                             [](const Spectrum& s) { return s.descriptor.volume.value(); })
      .def_property_readonly("volume_exact",
                             [](const Spectrum& s) { return s.descriptor.volume.str(); })
      .def_property_readonly("betti", [](const Spectrum& s) { return s.descriptor.betti; })
      .def_property_readonly("group_order",
                             [](const Spectrum& s) { return s.descriptor.group_order; })
      .def_readonly("truncation", &Spectrum::truncation)
      .def_readonly("approximate_shells", &Spectrum::approximate_shells)
      .def_readonly("lines", &Spectrum::lines)
      .def("counting",
           [](const Spectrum& s, int sign, double lam) { return counting(s, sign, lam); },
           py::arg("sign"), py::arg("lambda"))
      .def("symmetry_defect",
           [](const Spectrum& s) {
             std::vector<std::pair<std::string, long long>> out;
             for (const auto& [mag, diff] : symmetry_defect(s)) out.emplace_back(mag.str(), diff);
             return out;
           })
      .def("to_json", [](const Spectrum& s) { return spectrum_to_json(s).dump(2); })
      .def("to_csv", [](const Spectrum& s) { return spectrum_to_csv(s); })
      .def("__repr__", [](const Spectrum& s) {
        return "Spectrum(" + family_name(s.descriptor.family) +
               ", n=" + std::to_string(s.descriptor.n) +
               ", lines=" + std::to_string(s.lines.size()) + ")";
      });

  py::class_<LatticeBasis>(m, "LatticeBasis")
      .def_static("identity", &LatticeBasis::identity, py::arg("n"))
      .def_static("from_rows",
                  [](const std::vector<std::vector<std::string>>& rows) {
                    return LatticeBasis::from_strings(rows);
                  },
                  py::arg("rows"))
      .def_static("from_rows",
                  [](const std::vector<std::vector<double>>& rows) {
                    return LatticeBasis::from_doubles(rows);
                  },
                  py::arg("rows"))
      .def_readonly("n", &LatticeBasis::n)
      .def_readonly("exact", &LatticeBasis::exact);

  m.def("sphere_multiplicity",
        [](int n, int k) { return to_py_int(sphere_multiplicity(n, k)); }, py::arg("n"),
        py::arg("k"));
  m.def("sphere_spectrum", &sphere_spectrum, py::arg("n"), py::arg("k_max"));

  m.def("torus_spectrum",
        [](const LatticeBasis& b, double lambda_max) { return torus_spectrum(b, lambda_max); },
        py::arg("basis"), py::arg("lambda_max"));
  m.def("enumerate_shells",
        [](const LatticeBasis& b, double radius) {
          const ShellTable t = enumerate_shells(b, radius);
          std::vector<std::pair<std::string, unsigned long long>> shells;
          for (const auto& s : t.shells) shells.emplace_back(rational_str(s.q), s.count);
          return py::make_tuple(shells, t.approximate);
        },
        py::arg("basis"), py::arg("radius"));

  py::class_<GroupElement>(m, "GroupElement")
      .def_static("identity", &GroupElement::identity)
      .def_static("from_angles", &GroupElement::from_angles, py::arg("q"), py::arg("p1"),
                  py::arg("p2"))
      .def_static("from_matrix", &GroupElement::from_matrix, py::arg("matrix"))
      .def_property_readonly("matrix", [](const GroupElement& g) { return g.m; })
      .def_property_readonly("chi_pm", [](const GroupElement& g) { return chi_pm(g); });

  py::class_<IsometryGroup>(m, "IsometryGroup")
      .def_property_readonly("order", &IsometryGroup::order)
      .def_readonly("elements", &IsometryGroup::elements);

  m.def("close_group",
        [](const std::vector<GroupElement>& gens, unsigned long long max_order) {
          GroupOptions o;
          o.max_order = max_order;
          return close_group(gens, o);
        },
        py::arg("generators"), py::arg("max_order") = 100000ull);
  m.def("spaceform_spectrum",
        [](const IsometryGroup& g, int k_max, int precision_digits) {
          return spaceform_spectrum(g, k_max, options_for(precision_digits));
        },
        py::arg("group"), py::arg("k_max"), py::arg("precision_digits") = 60);
  m.def("poincare_series",
        [](const IsometryGroup& g, int k_max, int precision_digits) {
          return series_dict(poincare_F(g, k_max, options_for(precision_digits)));
        },
        py::arg("group"), py::arg("k_max"), py::arg("precision_digits") = 60);
  m.def("auxiliary_series",
        [](const IsometryGroup& g, int k_max, int precision_digits) {
          return series_dict(auxiliary_G(g, k_max, options_for(precision_digits)));
        },
        py::arg("group"), py::arg("k_max"), py::arg("precision_digits") = 60);
  m.def("smallest_eigenvalue_multiplicities",
        [](const IsometryGroup& g, int precision_digits) {
          return smallest_eigenvalue_multiplicities(g, options_for(precision_digits));
        },
        py::arg("group"), py::arg("precision_digits") = 60);
  m.def("asymmetry_certificate",
        [](const IsometryGroup& g, int k_max, int precision_digits) {
          const AsymmetryCertificate c =
              asymmetry_certificate(g, k_max, options_for(precision_digits));
          py::dict d;
          d["symmetric"] = c.symmetric;
          d["defect"] = c.defect;
          d["sample_max_abs"] = c.sample_max_abs;
          return d;
        },
        py::arg("group"), py::arg("k_max"), py::arg("precision_digits") = 60);

  m.def("weyl_coefficient",
        [](const Spectrum& s) {
          const PiRational c = weyl_leading_coefficient(s.descriptor.n, s.descriptor.volume);
          return py::make_tuple(c.str(), c.value());
        },
        py::arg("spectrum"));
  m.def("weyl_fit",
        [](const Spectrum& s, int samples) {
          const WeylReport r = weyl_fit(s, samples);
          py::list rows;
          for (const auto& v : r.samples) {
            py::dict d;
            d["lambda"] = v.lambda;
            d["n_plus"] = v.n_plus;
            d["n_minus"] = v.n_minus;
            d["predicted"] = v.predicted;
            d["rel_error_plus"] = v.rel_error_plus;
            d["rel_error_minus"] = v.rel_error_minus;
            rows.append(d);
          }
          py::dict d;
          d["coefficient_exact"] = r.coefficient.str();
          d["coefficient"] = r.coefficient.value();
          d["samples"] = rows;
          d["log_slope"] = r.log_slope;
          return d;
        },
        py::arg("spectrum"), py::arg("samples") = 10);
  m.def("counting_identity_check_torus",
        [](const LatticeBasis& b, double lam) {
          const CountingIdentityReport r = counting_identity_check_torus(b, lam);
          return py::make_tuple(to_py_int(r.lhs), to_py_int(r.rhs), r.match);
        },
        py::arg("basis"), py::arg("lambda"));
  m.def("zeta_partial",
        [](const Spectrum& sp, double s) {
          const ZetaPartial z = zeta_partial(sp, s);
          return py::make_tuple(z.partial, z.tail_bound);
        },
        py::arg("spectrum"), py::arg("s"));
  m.def("zeta_at_zero",
        [](const Spectrum& sp) {
          const ZetaZeroReport r = zeta_at_zero(sp.descriptor);
          return py::make_tuple(to_py_int(r.zeta_zero), r.semi_characteristic);
        },
        py::arg("spectrum"));
  m.def("eta_partial",
        [](const Spectrum& sp, double s) { return eta_partial(sp, s); }, py::arg("spectrum"),
        py::arg("s"));
  m.def("check_lower_bound",
        [](const Spectrum& sp, double kappa, const std::string& kind) {
          const BoundReport r = check_lower_bound(sp, kappa, parse_bound_kind(kind));
          py::dict d;
          d["kappa"] = r.kappa;
          d["kind"] = bound_kind_name(r.kind);
          d["bound"] = r.bound;
          d["bound_squared_exact"] = rational_str(r.bound_squared);
          d["min_abs_lambda"] = r.min_abs_lambda;
          d["pass"] = r.pass;
          d["attained"] = r.attained;
          d["multiplicity_at_plus_bound"] = r.mult_plus;
          d["multiplicity_at_minus_bound"] = r.mult_minus;
          return d;
        },
        py::arg("spectrum"), py::arg("kappa"), py::arg("kind"));

  m.def("run_job",
        [](const std::string& command, std::optional<int> n, std::optional<int> kmax,
           std::optional<double> lmax, std::optional<std::string> basis,
           std::optional<std::string> angles, std::optional<std::string> matrices,
           std::optional<double> kappa, std::optional<std::string> kind, std::optional<double> s,
           const std::string& format, int precision_digits) {
          JobSpec job;
          job.command = parse_command(command);
          job.n = n;
          job.kmax = kmax;
          job.lmax = lmax;
          job.basis = std::move(basis);
          job.angles = std::move(angles);
          job.matrices = std::move(matrices);
          job.kappa = kappa;
          job.kind = std::move(kind);
          job.s = s;
          job.format = format;
          job.precision_digits = precision_digits;
          const JobResult r = run(job);
          return py::make_tuple(r.exit_code, r.output);
        },
        py::arg("command"), py::arg("n") = std::nullopt, py::arg("kmax") = std::nullopt,
        py::arg("lmax") = std::nullopt, py::arg("basis") = std::nullopt,
        py::arg("angles") = std::nullopt, py::arg("matrices") = std::nullopt,
        py::arg("kappa") = std::nullopt, py::arg("kind") = std::nullopt,
        py::arg("s") = std::nullopt, py::arg("format") = "json",
        py::arg("precision_digits") = 60);
}

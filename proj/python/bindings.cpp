#include <optional>
#include <sstream>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zetadist/classify.hpp"
#include "zetadist/cli.hpp"
#include "zetadist/curves.hpp"
#include "zetadist/equidist.hpp"
#include "zetadist/error.hpp"
#include "zetadist/kloosterman.hpp"
#include "zetadist/zeta.hpp"

namespace py = pybind11;
using namespace zetadist;

namespace {

py::int_ to_py(const BigInt& v) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(v.str().c_str(), nullptr, 10));
}

BigInt from_py(const py::int_& v) { return BigInt(py::str(v).cast<std::string>()); }

py::list to_py(const std::vector<BigInt>& v) {
  py::list out;
  for (const auto& x : v) out.append(to_py(x));
  return out;
}

ZetaNumerator make_numerator(int genus, const py::int_& q, const std::vector<py::int_>& e) {
  std::vector<BigInt> coeffs;
  for (const auto& x : e) coeffs.push_back(from_py(x));
  return ZetaNumerator(genus, from_py(q), std::move(coeffs));
}

CurveSpec elliptic(std::uint64_t p, std::int64_t a, std::int64_t b) {
  auto c = CurveSpec::elliptic(make_field(p, 1), a, b);
  validate(c);
  return c;
}

CurveSpec hyperelliptic(std::uint64_t p, const std::vector<std::int64_t>& f) {
  auto c = CurveSpec::hyperelliptic(make_field(p, 1), f);
  validate(c);
  return c;
}

std::vector<double> angles_as_double(const FrobeniusAngles& fa) {
  std::vector<double> out;
  for (const auto& t : fa.theta) out.push_back(t.convert_to<double>());
  return out;
}

py::dict classification(const ZetaNumerator& z, std::uint64_t p) {
  const auto c = classify(z, p);
  py::list slopes;
  for (const auto& s : c.newton_slopes) {
    slopes.append(py::make_tuple(s.slope.numerator(), s.slope.denominator(), s.multiplicity));
  }
  py::dict out;
  out["kind"] = to_string(c.kind);
  out["p_rank"] = c.p_rank;
  out["newton_slopes"] = slopes;
  out["p_irreducible"] = is_irreducible_over_Z(z.coefficients());
  out["p2_irreducible"] = is_irreducible_over_Z(pm_numerator(z, 2).coefficients());
  return out;
}

py::object relation(const ZetaNumerator& z, long bound, double eps) {
  const auto r = find_integer_relation(frobenius_angles(z), bound, eps);
  if (!r.found) return py::none();
  return py::cast(*r.found);
}

py::dict density_dict(const DensityValue& v) {
  py::dict out;
  out["value"] = v.value;
  out["method"] = to_string(v.method);
  out["error_bound"] = v.error_bound;
  return out;
}

py::dict discrepancy(const std::vector<std::vector<double>>& points) {
  if (points.empty()) fail(ErrorKind::InvalidArgument, "empty point set");
  PointSet set;
  set.dimension = static_cast<int>(points.front().size());
  for (const auto& pt : points) {
    if (static_cast<int>(pt.size()) != set.dimension) {
      fail(ErrorKind::InvalidArgument, "points must share one dimension");
    }
    set.coords.insert(set.coords.end(), pt.begin(), pt.end());
  }
  const auto r = star_discrepancy(set);
  py::dict out;
  out["star_discrepancy"] = r.star_discrepancy;
  out["method"] = to_string(r.method);
  out["extreme_factor"] = r.extreme_factor;
  return out;
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_zetadist, m) {
  m.doc() = "Zeta numerators, Frobenius angles and equidistribution statistics";

  static py::exception<Error> error_type(m, "ZetadistError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error_type, (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  py::class_<CurveSpec>(m, "Curve")
      .def_static("elliptic", &elliptic, py::arg("p"), py::arg("a"), py::arg("b"))
      .def_static("hyperelliptic", &hyperelliptic, py::arg("p"), py::arg("f"))
      .def_property_readonly("genus", &CurveSpec::genus)
      .def_property_readonly("p", [](const CurveSpec& c) { return c.base().p(); })
      .def("count_points", &count_points, py::arg("n"))
      .def("zeta", &zeta_numerator);

  py::class_<ZetaNumerator>(m, "ZetaNumerator")
      .def(py::init(&make_numerator), py::arg("genus"), py::arg("q"), py::arg("e"))
      .def_property_readonly("genus", &ZetaNumerator::genus)
      .def_property_readonly("q", [](const ZetaNumerator& z) { return to_py(z.q()); })
      .def_property_readonly("e", [](const ZetaNumerator& z) { return to_py(z.e()); })
      .def("coefficients", [](const ZetaNumerator& z) { return to_py(z.coefficients()); })
      .def("power_sums",
           [](const ZetaNumerator& z, std::size_t n) { return to_py(extend_power_sums(z, n).s); },
           py::arg("n"))
      .def("jacobian_order",
           [](const ZetaNumerator& z, unsigned n) { return to_py(jacobian_order(z, n)); },
           py::arg("n"))
      .def("angles",
           [](const ZetaNumerator& z, int digits) {
             return angles_as_double(frobenius_angles(z, digits));
           },
           py::arg("digits") = kDefaultAngleDigits)
      .def("alpha",
           [](const ZetaNumerator& z, std::size_t n, const std::string& mode) {
             if (mode != "exact" && mode != "angle") {
               fail(ErrorKind::InvalidArgument, "mode must be exact or angle");
             }
             return alpha_sequence(z, n, mode == "exact" ? AlphaMode::Exact : AlphaMode::Angle).alpha;
           },
           py::arg("n"), py::arg("mode") = "exact")
      .def("classify", &classification, py::arg("p"))
      .def("integer_relation", &relation, py::arg("bound") = 50, py::arg("eps") = 1e-9)
      .def("__repr__", [](const ZetaNumerator& z) {
        std::string s = "ZetaNumerator(genus=" + std::to_string(z.genus()) + ", q=" + z.q().str() + ", e=[";
        for (std::size_t i = 0; i < z.e().size(); ++i) s += (i ? ", " : "") + z.e()[i].str();
        return s + "])";
      });

  m.def("lambda_density",
        [](int g, double beta, double gamma, std::optional<double> tol) {
          return density_dict(lambda_density(g, IntervalQuery::make(beta, gamma),
                                             tol.value_or(default_density_tolerance(g))));
        },
        py::arg("g"), py::arg("beta"), py::arg("gamma"), py::arg("tol") = py::none());
  m.def("monte_carlo_lambda",
        [](int g, double beta, double gamma, std::uint64_t samples, std::uint64_t seed) {
          return density_dict(monte_carlo_lambda(g, IntervalQuery::make(beta, gamma), samples, seed));
        },
        py::arg("g"), py::arg("beta"), py::arg("gamma"), py::arg("samples"), py::arg("seed") = 0);
  m.def("star_discrepancy", &discrepancy, py::arg("points"));
  m.def("kloosterman_sum",
        [](std::uint64_t p, unsigned n, std::int64_t a) { return kloosterman_sum(p, n, a); },
        py::arg("p"), py::arg("n"), py::arg("a"));
  m.def("kappa_sequence",
        [](std::uint64_t p, std::int64_t a, std::size_t n) { return kappa_sequence(p, a, n).kappa; },
        py::arg("p"), py::arg("a"), py::arg("n"));
  m.def("run_cli", &run_cli, py::arg("args"),
        "Runs a command-line subcommand in process; returns (exit_code, stdout, stderr).");
}

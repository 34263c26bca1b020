#include "zetadist/cli.hpp"

#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "zetadist/classify.hpp"
#include "zetadist/equidist.hpp"
#include "zetadist/kloosterman.hpp"
#include "zetadist/zeta.hpp"

namespace zetadist::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr std::int64_t kMaxExactJsonInt = std::int64_t{1} << 53;

json integer(const BigInt& v) {
  if (abs(v) <= kMaxExactJsonInt) return v.convert_to<std::int64_t>();
  return v.str();
}

json integers(const std::vector<BigInt>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(integer(x));
  return out;
}

std::string decimal(const Real& x, int digits) { return to_decimal(x, digits); }

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string rational_text(const boost::rational<long>& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

json relation_json(const RelationReport& r) {
  json out;
  out["found"] = r.found ? json(*r.found) : json(nullptr);
  out["bound"] = r.bound;
  out["epsilon"] = r.epsilon;
  out["min_residual"] = decimal(r.min_residual, 20);
  out["min_vector"] = r.min_vector;
  out["shells_searched"] = r.shells_searched;
  return out;
}

json classification_json(const Classification& c) {
  json out;
  out["kind"] = to_string(c.kind);
  out["p_rank"] = c.p_rank;
  json slopes = json::array();
  for (const auto& s : c.newton_slopes) {
    slopes.push_back(json{{"slope", rational_text(s.slope)}, {"multiplicity", s.multiplicity}});
  }
  out["newton_slopes"] = slopes;
  return out;
}

json interval_rows_json(const EmpiricalReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back(json{{"beta", row.query.beta},
                        {"gamma", row.query.gamma},
                        {"count", row.count},
                        {"frequency", row.frequency},
                        {"lambda", row.lambda},
                        {"deviation", row.deviation}});
  }
  return rows;
}

json empirical_json(const EmpiricalReport& r) {
  json out;
  out["genus"] = r.genus;
  out["N"] = r.count;
  out["intervals"] = interval_rows_json(r);
  out["sup_deviation"] = r.sup_deviation;
  out["histogram"] = json{{"bins", Histogram::kBins}, {"lower", -1.0}, {"upper", 1.0},
                          {"counts", r.histogram.counts}};
  return out;
}

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
      : out_(path, std::ios::binary) {
    if (!out_) fail(ErrorKind::ParseError, "cannot write " + path.string());
    row(header);
  }
  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i != 0) out_ << ',';
      out_ << fields[i];
    }
    out_ << "\r\n";
  }

 private:
  std::ofstream out_;
};

void write_histogram_csv(const std::filesystem::path& dir, const Histogram& h) {
  CsvWriter csv(dir / "histogram.csv", {"bin", "lower", "upper", "count"});
  for (int b = 0; b < Histogram::kBins; ++b) {
    csv.row({std::to_string(b), format_double(Histogram::lower_edge(b)),
             format_double(Histogram::lower_edge(b + 1)),
             std::to_string(h.counts[static_cast<std::size_t>(b)])});
  }
}

std::filesystem::path prepare_out(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorKind::ParseError, "cannot create output directory " + dir);
  return dir;
}

struct Options {
  std::string curve_path;
  unsigned n = 1;
  std::size_t big_n = 0;
  int digits = kDefaultAngleDigits;
  long bound = 50;
  double eps = 1e-9;
  std::string mode = "exact";
  int grid = 21;
  int genus = 1;
  double beta = -1;
  double gamma = 1;
  std::optional<double> tol;
  std::optional<std::uint64_t> mc;
  std::uint64_t seed = 0;
  std::uint64_t p = 0;
  std::int64_t a = 1;
  std::size_t sample = 200;
  std::string out_dir;
  bool timing = false;
};

json cmd_count(const Options& o, json& inputs) {
  const CurveFile cf = load_curve(o.curve_path);
  inputs["curve"] = cf.echo;
  inputs["n"] = o.n;
  BigInt order = 1;
  for (unsigned n = 1; n <= o.n; ++n) order *= cf.curve.base().p();
  if (order > BigInt(kMaxEnumerationOrder)) {
    fail(ErrorKind::SizeExceeded, "p^n exceeds the enumeration limit 2^28");
  }
  json counts = json::array();
  for (unsigned n = 1; n <= o.n; ++n) {
    counts.push_back(json{{"n", n}, {"points", integer(BigInt(count_points(cf.curve, n)))}});
  }
  return json{{"genus", cf.curve.genus()}, {"counts", counts}};
}

json cmd_zeta(const Options& o, json& inputs) {
  const CurveFile cf = load_curve(o.curve_path);
  inputs["curve"] = cf.echo;
  const ZetaNumerator z = zeta_numerator(cf.curve);
  json orders = json::array();
  for (unsigned n = 1; n <= 4; ++n) orders.push_back(integer(jacobian_order(z, n)));
  json out;
  out["genus"] = z.genus();
  out["q"] = integer(z.q());
  out["numerator"] = integers(z.e());
  out["polynomial"] = integers(z.coefficients());
  out["jacobian_orders"] = orders;
  return out;
}

json angles_json(const FrobeniusAngles& fa) {
  json theta = json::array();
  json approx = json::array();
  for (const Real& t : fa.theta) {
    theta.push_back(decimal(t, fa.precision_digits));
    approx.push_back(t.convert_to<double>());
  }
  json out;
  out["digits"] = fa.precision_digits;
  out["theta"] = theta;
  out["theta_double"] = approx;
  out["modulus_residual"] = decimal(fa.modulus_residual, 6);
  out["reconstruction_error"] = decimal(fa.reconstruction_error, 6);
  out["iterations"] = fa.iterations;
  return out;
}

json cmd_angles(const Options& o, json& inputs) {
  const CurveFile cf = load_curve(o.curve_path);
  inputs["curve"] = cf.echo;
  inputs["digits"] = o.digits;
  return angles_json(frobenius_angles(zeta_numerator(cf.curve), o.digits));
}

json cmd_classify(const Options& o, json& inputs) {
  const CurveFile cf = load_curve(o.curve_path);
  inputs["curve"] = cf.echo;
  inputs["K"] = o.bound;
  inputs["eps"] = o.eps;
  const ZetaNumerator z = zeta_numerator(cf.curve);
  const auto angles = frobenius_angles(z);
  json out;
  out["numerator"] = integers(z.e());
  out["classification"] = classification_json(classify(z, cf.curve.base().p()));
  out["p_irreducible"] = is_irreducible_over_Z(z.coefficients());
  out["p2_irreducible"] = is_irreducible_over_Z(pm_numerator(z, 2).coefficients());
  out["relation"] = relation_json(find_integer_relation(angles, o.bound, o.eps));
  return out;
}

AlphaMode parse_mode(const std::string& mode) {
  if (mode == "exact") return AlphaMode::Exact;
  if (mode == "angle") return AlphaMode::Angle;
  fail(ErrorKind::InvalidArgument, "mode must be exact or angle");
}

json cmd_alpha(const Options& o, json& inputs) {
  const CurveFile cf = load_curve(o.curve_path);
  inputs["curve"] = cf.echo;
  inputs["N"] = o.big_n;
  inputs["mode"] = o.mode;
  const auto seq = alpha_sequence(zeta_numerator(cf.curve), o.big_n, parse_mode(o.mode));
  json out;
  out["genus"] = seq.genus;
  out["q"] = integer(seq.q);
  out["mode"] = to_string(seq.mode);
  out["N"] = seq.size();
  if (o.out_dir.empty()) {
    out["alpha"] = seq.alpha;
  } else {
    const auto dir = prepare_out(o.out_dir);
    CsvWriter csv(dir / "alpha.csv", {"n", "alpha"});
    for (std::size_t i = 0; i < seq.size(); ++i) {
      csv.row({std::to_string(i + 1), format_double(seq.alpha[i])});
    }
    out["csv"] = "alpha.csv";
  }
  return out;
}

json cmd_empirical(const Options& o, json& inputs) {
  const CurveFile cf = load_curve(o.curve_path);
  inputs["curve"] = cf.echo;
  inputs["N"] = o.big_n;
  inputs["grid"] = o.grid;
  inputs["mode"] = o.mode;
  const auto seq = alpha_sequence(zeta_numerator(cf.curve), o.big_n, parse_mode(o.mode));
  const auto grid = default_grid(o.grid);
  const auto report = empirical_report(seq, grid);
  json out = empirical_json(report);
  if (!o.out_dir.empty()) {
    write_histogram_csv(prepare_out(o.out_dir), report.histogram);
    out["csv"] = "histogram.csv";
  }
  return out;
}

json density_json(const DensityValue& v) {
  return json{{"value", v.value}, {"method", to_string(v.method)}, {"error_bound", v.error_bound}};
}

json cmd_density(const Options& o, json& inputs) {
  const double tol = o.tol.value_or(default_density_tolerance(o.genus));
  inputs["g"] = o.genus;
  inputs["beta"] = o.beta;
  inputs["gamma"] = o.gamma;
  inputs["tol"] = tol;
  inputs["mc"] = o.mc ? json(*o.mc) : json(nullptr);
  const auto query = IntervalQuery::make(o.beta, o.gamma);
  json out;
  out["lambda"] = density_json(lambda_density(o.genus, query, tol));
  if (o.mc) out["monte_carlo"] = density_json(monte_carlo_lambda(o.genus, query, *o.mc, o.seed));
  return out;
}

json cmd_discrepancy(const Options& o, json& inputs) {
  const CurveFile cf = load_curve(o.curve_path);
  inputs["curve"] = cf.echo;
  inputs["N"] = o.big_n;
  const auto angles = frobenius_angles(zeta_numerator(cf.curve));
  const auto points = kronecker_points(angles, o.big_n);
  const auto report = star_discrepancy(points);
  json out;
  out["theta"] = angles_json(angles)["theta"];
  out["N"] = report.count;
  out["dimension"] = report.dimension;
  out["star_discrepancy"] = report.star_discrepancy;
  out["method"] = to_string(report.method);
  out["extreme_factor"] = report.extreme_factor;
  if (!o.out_dir.empty()) {
    std::vector<std::string> header{"n"};
    for (int j = 1; j <= points.dimension; ++j) header.push_back("theta_" + std::to_string(j));
    CsvWriter csv(prepare_out(o.out_dir) / "kronecker.csv", header);
    for (std::size_t i = 0; i < points.size(); ++i) {
      std::vector<std::string> row{std::to_string(i + 1)};
      for (int j = 0; j < points.dimension; ++j) row.push_back(format_double(points.at(i, j)));
      csv.row(row);
    }
    out["csv"] = "kronecker.csv";
  }
  return out;
}

json cmd_census(const Options& o, json& inputs) {
  CensusOptions opts;
  opts.bound = o.bound;
  opts.epsilon = o.eps;
  opts.sample_limit = o.sample;
  opts.seed = o.seed;
  inputs["p"] = o.p;
  inputs["genus"] = o.genus;
  inputs["K"] = o.bound;
  inputs["eps"] = o.eps;
  inputs["sample"] = o.sample;
  const CensusReport report = census(o.p, o.genus, opts);
  json entries = json::array();
  for (const auto& e : report.entries) {
    json entry;
    entry["coefficients"] = e.coefficients;
    entry["counts"] = e.counts;
    entry["numerator"] = integers(e.numerator.e());
    entry["classification"] = classification_json(e.classification);
    entry["p_irreducible"] = e.p_irreducible;
    entry["p2_irreducible"] = e.p2_irreducible;
    entry["pm_irreducible_all"] = e.pm_irreducible_all;
    entry["relation_found"] = e.relation.found ? json(*e.relation.found) : json(nullptr);
    entry["relation_min_residual"] = decimal(e.relation.min_residual, 6);
    entries.push_back(entry);
  }
  json out;
  out["p"] = report.p;
  out["genus"] = report.genus;
  out["family"] = report.family;
  out["sampled"] = report.sampled;
  out["curves"] = report.entries.size();
  out["ordinary"] = report.ordinary;
  out["supersingular"] = report.supersingular;
  out["intermediate"] = report.intermediate;
  out["p_irreducible"] = report.p_irreducible;
  out["relation_found"] = report.relation_found;
  out["entries"] = entries;
  return out;
}

json cmd_kloosterman(const Options& o, json& inputs) {
  inputs["p"] = o.p;
  inputs["a"] = o.a;
  inputs["N"] = o.big_n;
  inputs["grid"] = o.grid;
  const auto grid = default_grid(o.grid);
  const auto report = kappa_distribution_report(o.p, o.a, o.big_n, grid);
  PrecisionScope scope(static_cast<unsigned>(report.data.precision_digits) + 10);
  json out;
  out["p"] = report.data.p;
  out["a"] = report.data.a;
  out["K"] = report.data.K;
  out["K_precise"] = decimal(report.data.K_precise, report.data.precision_digits);
  out["imaginary_part"] = report.data.imag;
  out["phi"] = decimal(report.data.phi, report.data.precision_digits);
  out["phi_over_pi"] = decimal(report.data.phi / acos(Real(-1)), report.data.precision_digits);
  out["relation"] = relation_json(report.relation);
  out["equidistribution_expected"] = report.equidistribution_expected;
  out["empirical"] = empirical_json(report.empirical);
  if (!o.out_dir.empty()) {
    write_histogram_csv(prepare_out(o.out_dir), report.empirical.histogram);
    out["csv"] = "histogram.csv";
  }
  return out;
}

json error_json(std::string_view kind, const std::string& message, int code) {
  return json{{"error", json{{"kind", kind}, {"message", message}, {"exit_code", code}}}};
}

}  // namespace

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPrime:
    case ErrorKind::EvenCharacteristic:
    case ErrorKind::UnsupportedField:
    case ErrorKind::SingularCurve:
    case ErrorKind::BadDegree:
    case ErrorKind::BadCharacteristic:
      return kInvalidCurve;
    case ErrorKind::WeilViolation:
    case ErrorKind::NonIntegerCoefficient:
    case ErrorKind::NoConvergence:
    case ErrorKind::ToleranceBelowPrecision:
    case ErrorKind::ToleranceUnachievable:
    case ErrorKind::PrecisionInsufficient:
      return kNumeric;
    case ErrorKind::SizeExceeded:
    case ErrorKind::GuardExceeded:
    case ErrorKind::DegreeOutOfRange:
      return kSizeGuard;
    case ErrorKind::FieldMismatch:
    case ErrorKind::DivisionByZero:
    case ErrorKind::ZeroParameter:
    case ErrorKind::InvalidArgument:
    case ErrorKind::ParseError:
      return kUsage;
  }
  return kUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Zeta numerators, Frobenius angles and equidistribution statistics", "zetadist"};
  app.require_subcommand(1);
  app.add_flag("--timing", o.timing, "Include wall-clock timing in the report");

  auto curve_opt = [&](CLI::App* sub) {
    sub->add_option("--curve", o.curve_path, "Curve spec file (JSON or .toml)")->required();
  };
  auto out_opt = [&](CLI::App* sub) {
    sub->add_option("--out", o.out_dir, "Directory for CSV output");
  };
  auto relation_opts = [&](CLI::App* sub) {
    sub->add_option("--K", o.bound, "Relation search bound")->capture_default_str();
    sub->add_option("--eps", o.eps, "Relation search tolerance")->capture_default_str();
  };

  auto* count = app.add_subcommand("count", "Point counts over F_{q^n}, n = 1..N");
  curve_opt(count);
  count->add_option("--n", o.n, "Largest extension degree")->required()->check(CLI::Range(1U, 64U));

  auto* zeta = app.add_subcommand("zeta", "Zeta numerator and Jacobian orders");
  curve_opt(zeta);

  auto* angles = app.add_subcommand("angles", "Frobenius angles");
  curve_opt(angles);
  angles->add_option("--digits", o.digits, "Decimal digits")->capture_default_str();

  auto* cls = app.add_subcommand("classify", "Newton polygon, irreducibility, angle relations");
  curve_opt(cls);
  relation_opts(cls);

  auto* alpha = app.add_subcommand("alpha", "Normalized traces alpha_n");
  curve_opt(alpha);
  alpha->add_option("--N", o.big_n, "Sequence length")->required();
  alpha->add_option("--mode", o.mode, "exact or angle")->capture_default_str();
  out_opt(alpha);

  auto* emp = app.add_subcommand("empirical", "Interval frequencies against lambda_g");
  curve_opt(emp);
  emp->add_option("--N", o.big_n, "Sequence length")->required();
  emp->add_option("--grid", o.grid, "Number of grid intervals")->capture_default_str();
  emp->add_option("--mode", o.mode, "exact or angle")->capture_default_str();
  out_opt(emp);

  auto* dens = app.add_subcommand("density", "lambda_g(beta, gamma)");
  dens->add_option("--g", o.genus, "Genus (1..3)")->required();
  dens->add_option("--beta", o.beta, "Lower endpoint")->required();
  dens->add_option("--gamma", o.gamma, "Upper endpoint")->required();
  dens->add_option("--tol", o.tol, "Quadrature tolerance");
  dens->add_option("--mc", o.mc, "Monte Carlo sample count");
  dens->add_option("--seed", o.seed, "Monte Carlo seed")->capture_default_str();

  auto* disc = app.add_subcommand("discrepancy", "Star discrepancy of the Kronecker points");
  curve_opt(disc);
  disc->add_option("--N", o.big_n, "Number of points")->required();
  out_opt(disc);

  auto* cen = app.add_subcommand("census", "Classify every curve of a family over F_p");
  cen->add_option("--p", o.p, "Prime")->required();
  cen->add_option("--genus", o.genus, "1 or 2")->required();
  relation_opts(cen);
  cen->add_option("--sample", o.sample, "Sample size when the family is large")->capture_default_str();
  cen->add_option("--seed", o.seed, "Sampling seed")->capture_default_str();

  auto* kl = app.add_subcommand("kloosterman", "Kloosterman angle and kappa_n statistics");
  kl->add_option("--p", o.p, "Prime")->required();
  kl->add_option("--a", o.a, "Nonzero residue")->required();
  kl->add_option("--N", o.big_n, "Sequence length")->required();
  kl->add_option("--grid", o.grid, "Number of grid intervals")->capture_default_str();
  out_opt(kl);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << error_json("UsageError", e.what(), kUsage).dump() << '\n';
    return kUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  const auto start = std::chrono::steady_clock::now();
  json inputs = json::object();
  json results;
  try {
    if (name == "count") results = cmd_count(o, inputs);
    else if (name == "zeta") results = cmd_zeta(o, inputs);
    else if (name == "angles") results = cmd_angles(o, inputs);
    else if (name == "classify") results = cmd_classify(o, inputs);
    else if (name == "alpha") results = cmd_alpha(o, inputs);
    else if (name == "empirical") results = cmd_empirical(o, inputs);
    else if (name == "density") results = cmd_density(o, inputs);
    else if (name == "discrepancy") results = cmd_discrepancy(o, inputs);
    else if (name == "census") results = cmd_census(o, inputs);
    else results = cmd_kloosterman(o, inputs);
  } catch (const Error& e) {
    const int code = exit_code(e.kind());
    err << error_json(to_string(e.kind()), e.what(), code).dump() << '\n';
    return code;
  } catch (const std::bad_alloc&) {
    err << error_json("SizeExceeded", "out of memory", kSizeGuard).dump() << '\n';
    return kSizeGuard;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const bool seeded = name == "census" || (name == "density" && o.mc);
  if (!o.out_dir.empty()) inputs["out"] = o.out_dir;
  if (!o.curve_path.empty()) inputs["curve_file"] = o.curve_path;
  json report;
  report["tool_version"] = kToolVersion;
  report["command"] = name;
  report["inputs"] = inputs;
  report["seed"] = seeded ? json(o.seed) : json(nullptr);
  report["results"] = results;
  report["timing"] = o.timing ? json{{"wall_seconds", seconds}} : json(nullptr);
  out << report.dump(2) << '\n';
  return kOk;
}

}  // namespace zetadist::cli

#include "stabilis/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "stabilis/bound_series.hpp"
#include "stabilis/difference_operators.hpp"
#include "stabilis/harness.hpp"
#include "stabilis/json_io.hpp"
#include "stabilis/stability.hpp"

namespace stabilis {

namespace {

constexpr double kCoefficientSum = 106.0;  // 3+3+12+12+4+18+36+18

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string point_text(const Point& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.dim(); ++i) s += (i ? ", " : "") + real(x[i]);
  return s + ")";
}

std::vector<double> parse_reals(std::string_view text, std::string_view flag) {
  std::vector<double> out;
  while (true) {
    const auto comma = text.find(',');
    const auto item = text.substr(0, comma);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size())
      throw UsageError("malformed number \"" + std::string(item) + "\" in " + std::string(flag));
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::pair<std::string_view, std::string_view> split_kind(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) return {text, {}};
  return {text.substr(0, colon), text.substr(colon + 1)};
}

FunctionHandle load_input(const std::string& spec) {
  const auto [kind, rest] = split_kind(spec);
  if (kind == "poly" && !rest.empty()) {
    const auto c = parse_reals(rest, "--input");
    if (c.size() != 3) throw UsageError("--input poly: expects three coefficients a,b,c");
    return generate(GeneratorSpec::scalar(c[0], c[1], c[2]));
  }
  return function_from_json(read_json_file(spec));
}

PerturbationBound parse_phi(const std::string& spec, NormSpec norm) {
  const auto [kind, rest] = split_kind(spec);
  if (rest.empty()) throw UsageError("--phi expects kind:parameters, got \"" + spec + "\"");
  const auto v = parse_reals(rest, "--phi");
  if (kind == "constant" && v.size() == 1) return PerturbationBound::constant(v[0]);
  if (kind == "pointwise" && v.size() == 1) {
    if (!(v[0] >= 0.0)) throw InvalidEnvelope("pointwise bound must be nonnegative");
    return PerturbationBound::constant(kCoefficientSum * v[0]);
  }
  if (kind == "power" && v.size() == 2) return PerturbationBound::power(v[0], v[1], norm);
  throw UsageError("--phi expects constant:eps, pointwise:eps or power:theta,p; got \"" + spec + "\"");
}

std::optional<Direction> parse_direction_flag(const std::string& text) {
  if (text == "auto") return std::nullopt;
  return parse_direction(text);
}

std::size_t default_grid_points(std::size_t dim) {
  if (dim == 1) return 41;
  if (dim == 2) return 9;
  return 5;
}

// ---------------------------------------------------------------- decompose

struct DecomposeArgs {
  std::string input;
  std::string phi = "constant:0";
  std::string direction = "auto";
  std::string norm = "max";
  double tol = 1e-9;
  int max_iter = 40;
  double grid_radius = 2.0;
  int grid_points = 41;
  int series_terms = 64;
  double argument_cap = 1e12;
  std::string out;
  std::string plot;
};

int run_decompose(const DecomposeArgs& a, std::ostream& out, std::ostream& err) {
  const FunctionHandle f = load_input(a.input);
  ExtractionConfig cfg;
  cfg.norm = NormSpec{parse_norm_kind(a.norm)};
  cfg.direction = parse_direction_flag(a.direction);
  cfg.tolerance = a.tol;
  cfg.max_iterations = a.max_iter;
  cfg.probe = ProbeGrid{a.grid_radius, a.grid_points};
  cfg.series_terms = a.series_terms;
  cfg.argument_cap = a.argument_cap;
  const PerturbationBound phi = parse_phi(a.phi, cfg.norm);

  const DecompositionReport report = extract_all(f, phi, cfg);
  for (const auto& w : report.warnings) err << "warning: " << w << '\n';

  const std::string text = canonical_dump(report_to_json(report));
  if (a.out.empty()) {
    out << text;
  } else {
    write_text_file(a.out, text);
    if (report.quadratic_form && f.input_dim() == 1 && f.output_dim() == 1)
      out << "a = " << real(report.quadratic_form->coefficients()[0])
          << "\nb = " << real(report.cubic_form->coefficients()[0])
          << "\nc = " << real(report.quartic_form->coefficients()[0]) << '\n';
    const double worst_bound = *std::max_element(report.certified_bound.begin(), report.certified_bound.end());
    out << "residual_sup = " << real(report.residual_sup) << "\nmax certified bound = " << real(worst_bound)
        << "\nreport written to " << a.out << '\n';
  }
  if (!a.plot.empty()) {
    std::ostringstream csv;
    write_plot_csv(csv, f, report);
    write_text_file(a.plot, csv.str());
  }
  return exit_code::ok;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string input;
  std::string equation = "mixed";
  std::string norm = "max";
  double grid_radius = 2.0;
  int grid_points = 0;
  double tol = 1e-9;
  std::string out;
};

int run_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const FunctionHandle f = load_input(a.input);
  const NormSpec norm{parse_norm_kind(a.norm)};
  const int points = a.grid_points > 0 ? a.grid_points : static_cast<int>(default_grid_points(f.input_dim()));
  auto pairs = grid_pairs(ProbeGrid{a.grid_radius, points}.points(f.input_dim()));

  if (a.equation == "identities") {
    const auto parts = even_odd_split(f);
    const IdentityReport report = verify_identity_suite(parts.even, parts.odd, pairs, a.tol, norm);
    out << "identity  max_residual  max_relative  status\n";
    for (const auto& e : report.entries)
      out << e.identity << "  " << real(e.scan.max_residual) << "  " << real(e.scan.max_relative) << "  "
          << (e.scan.passed ? "ok" : "FAIL") << '\n';
    if (report.shrink_factor != 1.0) out << "grid shrunk by " << real(report.shrink_factor) << " to fit the domain\n";
    for (const auto& e : report.entries)
      if (!e.scan.passed)
        err << "worst offender for " << e.identity << ": x = " << point_text(e.scan.argmax.first)
            << ", y = " << point_text(e.scan.argmax.second) << ", relative residual "
            << real(e.scan.max_relative) << '\n';
    if (!a.out.empty()) write_text_file(a.out, canonical_dump(identity_report_to_json(report)));
    return report.all_passed() ? exit_code::ok : exit_code::verify_failed;
  }

  const EquationKind kind = parse_equation_kind(a.equation);
  const auto& terms = equation_terms(kind);
  double shrink = 1.0;
  if (f.domain()) {
    shrink = closure_shrink_factor(*f.domain(), terms, pairs);
    for (auto& [x, y] : pairs) {
      x = shrink * x;
      y = shrink * y;
    }
  }
  const ScanResult scan = scan_terms(f, terms, pairs, a.tol, norm);
  out << "equation " << to_string(kind) << ": " << pairs.size() << " pairs, max_residual "
      << real(scan.max_residual) << ", max_relative " << real(scan.max_relative) << ", "
      << (scan.passed ? "ok" : "FAIL") << '\n';
  if (shrink != 1.0) out << "grid shrunk by " << real(shrink) << " to fit the domain\n";
  if (!scan.passed)
    err << "worst offender: x = " << point_text(scan.argmax.first) << ", y = " << point_text(scan.argmax.second)
        << ", relative residual " << real(scan.max_relative) << " > tol " << real(a.tol) << '\n';
  if (!a.out.empty()) {
    const Json j{{"equation", std::string(to_string(kind))},
                 {"max_residual", scan.max_residual},
                 {"max_relative", scan.max_relative},
                 {"argmax", Json::array({scan.argmax.first.to_vector(), scan.argmax.second.to_vector()})},
                 {"passed", scan.passed},
                 {"shrink_factor", shrink}};
    write_text_file(a.out, canonical_dump(j));
  }
  return scan.passed ? exit_code::ok : exit_code::verify_failed;
}

// ---------------------------------------------------------------- bound

struct BoundArgs {
  std::string phi;
  std::string which;
  std::string x = "1";
  std::string direction = "auto";
  std::string norm = "max";
  int terms = 200;
};

struct BoundTarget {
  SeriesKind series;
  std::vector<ComponentKind> components;
  std::optional<ClosedForm> closed;
};

BoundTarget bound_target(const std::string& which) {
  using CK = ComponentKind;
  const std::vector<CK> all{CK::quadratic, CK::cubic, CK::quartic};
  if (which == "3.2") return {SeriesKind::cubic, {CK::cubic}, std::nullopt};
  if (which == "3.13") return {SeriesKind::quadratic, {CK::quadratic}, std::nullopt};
  if (which == "3.23") return {SeriesKind::quartic, {CK::quartic}, std::nullopt};
  if (which == "3.29") return {SeriesKind::even_combined, {CK::quadratic, CK::quartic}, std::nullopt};
  if (which == "3.33") return {SeriesKind::full, all, std::nullopt};
  if (which == "cor3.6") return {SeriesKind::full, all, ClosedForm::contraction_power};
  if (which == "cor3.11") return {SeriesKind::full, all, ClosedForm::dilation_power};
  if (which == "cor3.12") return {SeriesKind::full, all, ClosedForm::dilation_constant};
  throw UsageError("--which expects 3.2, 3.13, 3.23, 3.29, 3.33, cor3.6, cor3.11 or cor3.12");
}

Direction closed_form_direction(ClosedForm c) {
  return c == ClosedForm::contraction_power ? Direction::contraction : Direction::dilation;
}

Direction auto_direction(const PerturbationBound& phi, const std::vector<ComponentKind>& components) {
  std::optional<Direction> chosen;
  for (auto kind : components) {
    const Direction d = select_direction(phi, kind);
    if (chosen && *chosen != d)
      throw DivergentSeries("no single direction is summable for every component under " + phi.describe());
    chosen = d;
  }
  return *chosen;
}

int run_bound(const BoundArgs& a, std::ostream& out) {
  const NormSpec norm_spec{parse_norm_kind(a.norm)};
  const PerturbationBound phi = parse_phi(a.phi, norm_spec);
  const BoundTarget target = bound_target(a.which);
  const Point x(parse_reals(a.x, "--x"));
  const auto requested = parse_direction_flag(a.direction);

  Direction direction;
  if (target.closed) {
    direction = closed_form_direction(*target.closed);
    if (requested && *requested != direction)
      throw UsageError(a.which + " is stated for the " + std::string(to_string(direction)) + " direction");
  } else {
    direction = requested ? *requested : auto_direction(phi, target.components);
  }

  // theta ||x||^p for power envelopes, epsilon for constant ones
  std::optional<double> scale;
  if (const auto* c = std::get_if<PerturbationBound::Constant>(&phi.kind())) scale = c->epsilon;
  if (const auto* p = std::get_if<PerturbationBound::Power>(&phi.kind()))
    scale = p->theta * std::pow(norm(x, p->norm), p->p);

  out << "series " << to_string(target.series) << ", " << to_string(direction) << ", phi " << phi.describe()
      << ", x = " << point_text(x) << ", terms " << a.terms << '\n';

  std::optional<double> closed;
  if (target.closed) {
    const bool power = std::holds_alternative<PerturbationBound::Power>(phi.kind());
    if (*target.closed == ClosedForm::dilation_constant && power)
      throw RegimeError(a.which + " is stated for a constant envelope");
    if (*target.closed != ClosedForm::dilation_constant && !power)
      throw RegimeError(a.which + " is stated for a power envelope");
    const auto* pw = std::get_if<PerturbationBound::Power>(&phi.kind());
    const double k = corollary_constant(*target.closed, pw ? pw->theta : 1.0, pw ? pw->p : 0.0);
    closed = k * *scale;
    out << "closed_form_constant = " << real(k) << "\nclosed_form = " << real(*closed) << '\n';
  }

  const SeriesValue v = bound_series({target.series, phi, direction}, x, a.terms);
  out << "partial_sum = " << real(v.partial_sum) << "\ntail_majorant = " << real(v.tail_majorant)
      << "\ntotal = " << real(v.total()) << '\n';
  if (scale && *scale > 0.0) out << "coefficient = " << real(v.total() / *scale) << '\n';
  if (closed) {
    const double rel = *closed == 0.0 ? std::abs(v.total()) : std::abs(v.total() - *closed) / std::abs(*closed);
    out << "relative_difference = " << real(rel) << '\n';
  }
  return exit_code::ok;
}

}  // namespace

int exit_code_for(const Error& e) {
  switch (e.error_class()) {
    case ErrorClass::convergence: return exit_code::convergence;
    case ErrorClass::hypothesis: return exit_code::hypothesis;
    case ErrorClass::input: return exit_code::input;
  }
  return exit_code::input;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decompose approximate solutions of the mixed quadratic-cubic-quartic equation into "
               "certified components."};
  app.name("stabilis");
  app.require_subcommand(1);
  app.footer(
      "Envelopes (--phi): constant:EPS bounds ||D_f(x,y)|| by EPS; power:THETA,P by "
      "THETA(||x||^P + ||y||^P);\npointwise:EPS takes a bound EPS on |f - exact| and converts it to "
      "constant:106*EPS,\n106 being the sum of the absolute coefficients of D_f.\n"
      "Exit codes: 0 ok, 1 verification failed, 2 no convergence, 3 hypothesis violated,\n"
      "4 invalid input or I/O failure, 64 usage error. STABILIS_THREADS caps worker threads.");

  DecomposeArgs dec;
  auto* decompose = app.add_subcommand("decompose", "extract Q1, C, Q2 and the certified bound");
  decompose->add_option("--input", dec.input, "poly:a,b,c or a JSON function file")->required();
  decompose->add_option("--phi", dec.phi, "envelope of D_f (constant:, power:, pointwise:)")->capture_default_str();
  decompose->add_option("--direction", dec.direction, "auto, contraction or dilation")
      ->check(CLI::IsMember({"auto", "contraction", "dilation"}))
      ->capture_default_str();
  decompose->add_option("--tol", dec.tol, "stopping tolerance on successive iterates")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  decompose->add_option("--max-iter", dec.max_iter, "iteration limit")->check(CLI::Range(1, 1000))->capture_default_str();
  decompose->add_option("--grid-radius", dec.grid_radius, "probe grid half-width")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  decompose->add_option("--grid-points", dec.grid_points, "probe points per axis")
      ->check(CLI::Range(2, 10001))
      ->capture_default_str();
  decompose->add_option("--series-terms", dec.series_terms, "terms summed before the tail majorant")
      ->check(CLI::Range(1, 100000))
      ->capture_default_str();
  decompose->add_option("--argument-cap", dec.argument_cap, "largest ||2^n x|| evaluated in dilation")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  decompose->add_option("--norm", dec.norm, "max or euclidean")
      ->check(CLI::IsMember({"max", "max-coordinate", "euclidean", "l2"}))
      ->capture_default_str();
  decompose->add_option("--out", dec.out, "report JSON file (stdout when omitted)");
  decompose->add_option("--plot", dec.plot, "CSV file with x, f, reconstruction, bound");

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "check an equation or the identity suite on a grid");
  verify->add_option("--input", ver.input, "poly:a,b,c or a JSON function file")->required();
  verify->add_option("--equation", ver.equation, "mixed, quadratic, cubic, quartic or identities")
      ->check(CLI::IsMember({"mixed", "quadratic", "cubic", "quartic", "identities"}))
      ->capture_default_str();
  verify->add_option("--grid-radius", ver.grid_radius, "grid half-width")->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_option("--grid-points", ver.grid_points, "points per axis (0: 41 in one dimension, fewer above)")
      ->check(CLI::Range(0, 10001))
      ->capture_default_str();
  verify->add_option("--tol", ver.tol, "relative tolerance against the residual scale")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify->add_option("--norm", ver.norm, "max or euclidean")
      ->check(CLI::IsMember({"max", "max-coordinate", "euclidean", "l2"}))
      ->capture_default_str();
  verify->add_option("--out", ver.out, "residual report JSON file");

  BoundArgs bnd;
  auto* bound = app.add_subcommand("bound", "sum an a-priori bound series and compare closed forms");
  bound->add_option("--phi", bnd.phi, "envelope of D_f (constant:, power:, pointwise:)")->required();
  bound->add_option("--which", bnd.which, "3.2 | 3.13 | 3.23 | 3.29 | 3.33 | cor3.6 | cor3.11 | cor3.12")->required();
  bound->add_option("--x", bnd.x, "evaluation point, comma separated")->capture_default_str();
  bound->add_option("--direction", bnd.direction, "auto, contraction or dilation")
      ->check(CLI::IsMember({"auto", "contraction", "dilation"}))
      ->capture_default_str();
  bound->add_option("--terms", bnd.terms, "terms per strand before the tail majorant")
      ->check(CLI::Range(1, 100000))
      ->capture_default_str();
  bound->add_option("--norm", bnd.norm, "norm used by power envelopes")
      ->check(CLI::IsMember({"max", "max-coordinate", "euclidean", "l2"}))
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_code::ok;
  } catch (const CLI::ParseError& e) {
    err << "stabilis: " << e.what() << "\n\n" << app.help();
    return exit_code::usage;
  }

  try {
    if (decompose->parsed()) return run_decompose(dec, out, err);
    if (verify->parsed()) return run_verify(ver, out, err);
    return run_bound(bnd, out);
  } catch (const UsageError& e) {
    err << "stabilis: " << e.what() << '\n';
    return exit_code::usage;
  } catch (const Error& e) {
    err << "stabilis: " << e.name() << ": " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const nlohmann::json::exception& e) {
    err << "stabilis: SchemaError: " << e.what() << '\n';
    return exit_code::input;
  } catch (const std::exception& e) {
    err << "stabilis: " << e.what() << '\n';
    return exit_code::input;
  }
}

}  // namespace stabilis

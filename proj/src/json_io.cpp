#include "stabilis/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "stabilis/errors.hpp"
#include "stabilis/samples.hpp"

namespace stabilis {

namespace {

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void dump(std::ostringstream& os, const Json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {  // std::map storage: sorted keys
        if (!first) os << ",\n";
        first = false;
        os << pad << Json(key).dump() << ": ";
        dump(os, value, depth + 1);
      }
      os << "\n" << close_pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      const bool scalars = std::none_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); });
      if (scalars) {
        os << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          dump(os, j[i], depth + 1);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << pad;
        dump(os, j[i], depth + 1);
      }
      os << "\n" << close_pad << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      os << (std::isfinite(v) ? format_real(v) : "null");
      return;
    }
    default:
      os << j.dump();
  }
}

double real_field(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) throw SchemaError(std::string("expected numeric field \"") + key + "\"");
  return j[key].get<double>();
}

std::vector<double> real_row(const Json& j, const char* what) {
  if (j.is_number()) return {j.get<double>()};
  if (!j.is_array()) throw SchemaError(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : j) {
    if (!e.is_number()) throw SchemaError(std::string(what) + " must contain numbers only");
    out.push_back(e.get<double>());
  }
  return out;
}

std::vector<std::vector<double>> real_table(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) throw SchemaError(std::string("expected array field \"") + key + "\"");
  std::vector<std::vector<double>> out;
  for (const auto& row : j[key]) out.push_back(real_row(row, key));
  return out;
}

Json nest(const std::vector<double>& flat, std::size_t offset, std::size_t dim, int depth) {
  if (depth == 0) return flat[offset];
  std::size_t stride = 1;
  for (int i = 1; i < depth; ++i) stride *= dim;
  Json arr = Json::array();
  for (std::size_t i = 0; i < dim; ++i) arr.push_back(nest(flat, offset + i * stride, dim, depth - 1));
  return arr;
}

void flatten(const Json& j, std::size_t dim, int depth, std::vector<double>& out) {
  if (depth == 0) {
    if (!j.is_number()) throw SchemaError("form coefficients must be numbers");
    out.push_back(j.get<double>());
    return;
  }
  if (!j.is_array() || j.size() != dim) throw SchemaError("form coefficients are not a square tensor");
  for (const auto& e : j) flatten(e, dim, depth - 1, out);
}

template <int Degree>
HomogeneousForm<Degree> coefficient_field(const Json& j, const char* key) {
  if (!j.contains(key)) throw SchemaError(std::string("missing field \"") + key + "\"");
  const Json& v = j[key];
  if (v.is_number()) return HomogeneousForm<Degree>::scalar(v.get<double>());
  return form_from_json<Degree>(v);
}

Perturbation perturbation_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw SchemaError("perturbation must be an object with a \"kind\"");
  const auto kind = j["kind"].get<std::string>();
  if (kind == "none") return NoPerturbation{};
  if (kind == "trig") return TrigPerturbation{real_field(j, "amplitude")};
  if (kind == "uniform-noise") {
    if (!j.contains("seed") || !j["seed"].is_number_unsigned())
      throw SchemaError("uniform-noise needs a nonnegative integer \"seed\"");
    return UniformNoise{real_field(j, "amplitude"), j["seed"].get<std::uint64_t>()};
  }
  throw SchemaError("unknown perturbation kind \"" + kind + "\"");
}

Json perturbation_to_json(const Perturbation& p) {
  if (const auto* t = std::get_if<TrigPerturbation>(&p)) return {{"kind", "trig"}, {"amplitude", t->amplitude}};
  if (const auto* n = std::get_if<UniformNoise>(&p))
    return {{"kind", "uniform-noise"}, {"amplitude", n->amplitude}, {"seed", n->seed}};
  return {{"kind", "none"}};
}

Json point_json(const Point& x) { return x.to_vector(); }

template <int Degree>
Json component_json(const HomogeneousForm<Degree>& form) {
  if (form.dim() == 1 && form.outputs() == 1) return form.coefficients().front();
  return form_to_json(form);
}

}  // namespace

std::string canonical_dump(const Json& j) {
  std::ostringstream os;
  dump(os, j, 0);
  os << "\n";
  return os.str();
}

template <int Degree>
Json form_to_json(const HomogeneousForm<Degree>& form) {
  Json outputs = Json::array();
  for (std::size_t o = 0; o < form.outputs(); ++o)
    outputs.push_back(nest(form.coefficients(), o * form.entries_per_output(), form.dim(), Degree));
  return {{"degree", Degree}, {"coefficients", outputs}};
}

template <int Degree>
HomogeneousForm<Degree> form_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("degree") || !j.contains("coefficients"))
    throw SchemaError("form needs \"degree\" and \"coefficients\"");
  if (!j["degree"].is_number_integer() || j["degree"].get<int>() != Degree)
    throw SchemaError("expected a degree-" + std::to_string(Degree) + " form");
  const Json& c = j["coefficients"];
  if (!c.is_array() || c.empty()) throw SchemaError("form coefficients must be a nonempty array");
  // Peel one level off the first output to learn the input dimension.
  const Json& first = c.front();
  if (!first.is_array() || first.empty()) throw SchemaError("form coefficients are not a tensor");
  const std::size_t dim = first.size();
  std::vector<double> flat;
  for (const auto& out : c) flatten(out, dim, Degree, flat);
  return HomogeneousForm<Degree>(dim, c.size(), std::move(flat));
}

template Json form_to_json<2>(const HomogeneousForm<2>&);
template Json form_to_json<3>(const HomogeneousForm<3>&);
template Json form_to_json<4>(const HomogeneousForm<4>&);
template HomogeneousForm<2> form_from_json<2>(const Json&);
template HomogeneousForm<3> form_from_json<3>(const Json&);
template HomogeneousForm<4> form_from_json<4>(const Json&);

GeneratorSpec generator_from_json(const Json& j) {
  if (!j.is_object() || j.value("kind", "") != "poly") throw SchemaError("expected {\"kind\":\"poly\",...}");
  GeneratorSpec spec{coefficient_field<2>(j, "a"), coefficient_field<3>(j, "b"), coefficient_field<4>(j, "c"),
                     NoPerturbation{}, 2.0};
  if (j.contains("perturbation")) spec.perturbation = perturbation_from_json(j["perturbation"]);
  if (j.contains("domain_radius")) spec.domain_radius = real_field(j, "domain_radius");
  spec.validate();
  return spec;
}

Json generator_to_json(const GeneratorSpec& spec) {
  Json j{{"kind", "poly"}, {"a", component_json(spec.a)}, {"b", component_json(spec.b)}, {"c", component_json(spec.c)}};
  if (!std::holds_alternative<NoPerturbation>(spec.perturbation))
    j["perturbation"] = perturbation_to_json(spec.perturbation);
  return j;
}

FunctionHandle function_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw SchemaError("input function must be an object with a \"kind\"");
  const auto kind = j["kind"].get<std::string>();
  if (kind == "poly") return generate(generator_from_json(j));
  if (kind == "samples") return sampled_function(real_table(j, "points"), real_table(j, "values"));
  throw SchemaError("unknown function kind \"" + kind + "\"");
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

Json report_to_json(const DecompositionReport& r) {
  Json components;
  if (r.quadratic_form && r.cubic_form && r.quartic_form) {
    components = {{"a", component_json(*r.quadratic_form)},
                  {"b", component_json(*r.cubic_form)},
                  {"c", component_json(*r.quartic_form)}};
  } else {
    Json xs = Json::array(), q1 = Json::array(), c = Json::array(), q2 = Json::array();
    for (const auto& x : r.probes) {
      xs.push_back(point_json(x));
      q1.push_back(r.quadratic_part(x).to_vector());
      c.push_back(r.cubic_part(x).to_vector());
      q2.push_back(r.quartic_part(x).to_vector());
    }
    components = {{"diagonals", {{"x", xs}, {"quadratic", q1}, {"cubic", c}, {"quartic", q2}}}};
  }

  Json table = Json::array();
  for (std::size_t i = 0; i < r.probes.size(); ++i)
    table.push_back({{"x", point_json(r.probes[i])}, {"bound", r.certified_bound[i]}, {"residual", r.residual[i]}});

  Json direction, iterations, last_delta;
  for (auto kind : {ComponentKind::quadratic, ComponentKind::cubic, ComponentKind::quartic}) {
    const std::string key(to_string(kind));
    direction[key] = std::string(to_string(r.direction_used(kind)));
    iterations[key] = r.iterations_used(kind);
  }
  last_delta["quadratic"] = r.quadratic.last_delta;
  last_delta["cubic"] = r.cubic.last_delta;
  last_delta["quartic"] = r.quartic.last_delta;

  return {{"components", components},
          {"certified_bound", table},
          {"direction", direction},
          {"iterations", iterations},
          {"last_delta", last_delta},
          {"phi", r.phi_used.describe()},
          {"shift", r.shift.to_vector()},
          {"residual_sup", r.residual_sup},
          {"envelope_violated", r.envelope_violated},
          {"warnings", r.warnings}};
}

Json identity_report_to_json(const IdentityReport& report) {
  Json entries = Json::array();
  for (const auto& e : report.entries)
    entries.push_back({{"identity", e.identity},
                       {"max_residual", e.scan.max_residual},
                       {"max_relative", e.scan.max_relative},
                       {"passed", e.scan.passed},
                       {"argmax", Json::array({point_json(e.scan.argmax.first), point_json(e.scan.argmax.second)})}});
  return {{"identities", entries}, {"shrink_factor", report.shrink_factor}, {"passed", report.all_passed()}};
}

void write_plot_csv(std::ostream& out, const FunctionHandle& f, const DecompositionReport& r) {
  const std::size_t d = f.input_dim();
  const std::size_t m = f.output_dim();
  auto columns = [](const char* name, std::size_t n) {
    if (n == 1) return std::string(name);
    std::string s;
    for (std::size_t i = 0; i < n; ++i) s += (i ? "," : "") + std::string(name) + std::to_string(i);
    return s;
  };
  out << columns("x", d) << ',' << columns("f", m) << ',' << columns("reconstruction", m) << ",bound\n";
  auto row = [&out](const std::vector<double>& v) {
    for (double e : v) out << format_real(e) << ',';
  };
  for (std::size_t i = 0; i < r.probes.size(); ++i) {
    row(r.probes[i].to_vector());
    row(f(r.probes[i]).to_vector());
    row(r.reconstruction(r.probes[i]).to_vector());
    out << format_real(r.certified_bound[i]) << '\n';
  }
}

}  // namespace stabilis

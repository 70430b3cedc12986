#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "json.hpp"
#include "stabilis/difference_operators.hpp"
#include "stabilis/forms.hpp"
#include "stabilis/harness.hpp"
#include "stabilis/stability.hpp"

namespace stabilis {

using Json = nlohmann::json;

/// Pretty-printed JSON with keys in lexicographic order and every real
/// written with 17 significant digits, so equal documents are byte-equal.
std::string canonical_dump(const Json& j);

/// {"degree": k, "coefficients": [per output, k-deep nested arrays]}
template <int Degree>
Json form_to_json(const HomogeneousForm<Degree>& form);
template <int Degree>
HomogeneousForm<Degree> form_from_json(const Json& j);

/// Input functions:
///   {"kind":"poly","a":..,"b":..,"c":..[,"perturbation":{..}]}
///     a, b, c are reals (d = m = 1) or form objects; the optional
///     perturbation is {"kind":"trig","amplitude":..} or
///     {"kind":"uniform-noise","amplitude":..,"seed":..}
///   {"kind":"samples","points":[[..],..],"values":[[..],..]}
/// Malformed documents throw SchemaError.
FunctionHandle function_from_json(const Json& j);
GeneratorSpec generator_from_json(const Json& j);
Json generator_to_json(const GeneratorSpec& spec);

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

Json report_to_json(const DecompositionReport& report);
Json identity_report_to_json(const IdentityReport& report);

/// CSV with one row per probe: x, f, reconstruction, bound (coordinates
/// expand into x0, x1, ... and f0, f1, ... when d or m exceeds one).
void write_plot_csv(std::ostream& out, const FunctionHandle& f, const DecompositionReport& report);

}  // namespace stabilis

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kato/kato_data.hpp"

namespace kato {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A document is either full Kato data or a bare fan (used for projectivity
/// and rendering fixtures).
using Document = std::variant<KatoData, Fan>;

Document parse_document(const std::string& text);
KatoData parse_kato_document(const std::string& text);
Fan parse_fan_document(const std::string& text);

/// Canonical explicit-form document; parse(serialize(d)) reproduces d.
std::string serialize(const KatoData& d);
std::string serialize(const Fan& f);

/// Deterministic SVG of a planar sector diagram (n = 2) or the barycentric
/// cross-section (n = 3).
std::string render_svg(const Fan& f);

/// Fan export: rays and maximal cones as index lists.
std::string export_fan(const Fan& f);

/// Command-line dispatcher. Returns 0 on success, 1 on invalid input,
/// 2 on an Unknown isomorphism verdict.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kato

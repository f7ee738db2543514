#pragma once

// JSON forms of groups, elements, functions, QSP instances, certificates and
// equations. See FORMATS.md for the schemas.
//
// Integers are written as JSON numbers when |x| <= 2^53 and as decimal
// strings otherwise; both forms are accepted on input.

#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "wreath/qsp.hpp"
#include "wreath/wreath.hpp"

namespace wreath::io {

using Json = nlohmann::ordered_json;

/// Malformed JSON or a document that does not match the schema. The message
/// carries "line L, column C" for syntax errors and a JSON pointer for
/// schema errors.
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

/// Parses text; syntax errors become FormatError with line and column.
Json parse_text(const std::string& text);
/// Canonical text: two-space indent, scalar arrays on one line, trailing
/// newline.
std::string dump(const Json& j);

Json to_json(Int x);
Int int_from_json(const Json& j, const std::string& where);

Json to_json(const GroupPresentation& g);
GroupPresentation group_from_json(const Json& j, const std::string& where);

Json to_json(const GroupElement& e);
GroupElement element_from_json(const Json& j, const GroupPresentation& g, const std::string& where);

/// {"terms": [{"point": [...], "coeff": [...]}, ...]}; the groups come from
/// the enclosing document.
Json to_json(const SupportedFunction& f);
SupportedFunction function_from_json(const Json& j, const GroupPresentation& A, const GroupPresentation& B,
                                     const std::string& where);

Json to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j, const GroupPresentation& B, const std::string& where = "");

Json to_json(const WreathElement& w);
WreathElement wreath_from_json(const Json& j, const GroupPresentation& A, const GroupPresentation& B,
                               const std::string& where);

/// A QSP instance file. `provenance` is carried through unchanged.
struct InstanceDoc {
  QspInstance instance;
  std::optional<Json> provenance;
};

Json to_json(const InstanceDoc& d);
InstanceDoc instance_from_json(const Json& j);

/// An equation file, optionally with a known solving assignment.
struct EquationDoc {
  OrientableEquation equation;
  std::optional<EquationAssignment> assignment;
  std::optional<Json> provenance;
};

Json to_json(const EquationDoc& d);
EquationDoc equation_from_json(const Json& j);

/// FNV-1a 64-bit digest of raw bytes, as 16 lowercase hex digits.
std::string fnv1a64(const std::string& bytes);

}  // namespace wreath::io

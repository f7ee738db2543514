#include "wreath/json_codec.hpp"

#include <charconv>
#include <cstdio>
#include <initializer_list>

#include "wreath/errors.hpp"

namespace wreath::io {

namespace {

constexpr Int kSafe = Int{1} << 53;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw FormatError((where.empty() ? std::string("/") : where) + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

const Json& array_field(const Json& j, const char* key, const std::string& where) {
  const Json& a = field(j, key, where);
  if (!a.is_array()) fail(where + "/" + key, "expected an array");
  return a;
}

void only_keys(const Json& j, std::initializer_list<const char*> keys, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) fail(where, "unknown field \"" + it.key() + "\"");
  }
}

void expect_kind(const Json& j, const char* kind, const std::string& where) {
  auto it = j.find("kind");
  if (it == j.end()) return;
  if (!it->is_string() || it->get<std::string>() != kind)
    fail(where + "/kind", std::string("expected \"") + kind + "\"");
}

std::string at(const std::string& where, std::size_t i) { return where + "/" + std::to_string(i); }

std::size_t count_from_json(const Json& j, const std::string& where) {
  Int v = int_from_json(j, where);
  if (v < 0) fail(where, "expected a nonnegative integer");
  return static_cast<std::size_t>(v);
}

}  // namespace

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min(e.byte, text.size() + 1);
    for (std::size_t i = 0; i + 1 < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    // Keep the library's description, drop its own position prefix.
    auto pos = msg.find("syntax error");
    if (pos != std::string::npos) msg = msg.substr(pos);
    throw FormatError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
  }
}

namespace {

bool is_flat(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& x : j)
    if (x.is_structured()) return false;
  return true;
}

// Like dump(2), except arrays of scalars stay on one line.
void write(const Json& j, std::string& out, int depth) {
  const std::string pad(2 * (depth + 1), ' '), close(2 * depth, ' ');
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out += ",\n";
      first = false;
      out += pad + Json(it.key()).dump() + ": ";
      write(it.value(), out, depth + 1);
    }
    out += "\n" + close + "}";
  } else if (j.is_array() && !j.empty() && !is_flat(j)) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ",\n";
      out += pad;
      write(j[i], out, depth + 1);
    }
    out += "\n" + close + "]";
  } else if (j.is_array()) {
    out += "[";
    for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + j[i].dump();
    out += "]";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string dump(const Json& j) {
  std::string out;
  write(j, out, 0);
  return out + "\n";
}

Json to_json(Int x) {
  if (x > kSafe || x < -kSafe) return std::to_string(x);
  return x;
}

Int int_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
      fail(where, "integer out of 64-bit range");
    return j.get<Int>();
  }
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    Int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc::result_out_of_range) fail(where, "integer out of 64-bit range");
    if (ec != std::errc() || p != s.data() + s.size() || s.empty()) fail(where, "expected a decimal integer");
    return v;
  }
  fail(where, "expected an integer");
}

Json to_json(const GroupPresentation& g) {
  Json t = Json::array();
  for (Int a : g.torsion()) t.push_back(to_json(a));
  return Json{{"free_rank", g.free_rank()}, {"torsion", t}};
}

GroupPresentation group_from_json(const Json& j, const std::string& where) {
  only_keys(j, {"free_rank", "torsion"}, where);
  std::size_t r = count_from_json(field(j, "free_rank", where), where + "/free_rank");
  std::vector<Int> torsion;
  const Json& t = array_field(j, "torsion", where);
  for (std::size_t i = 0; i < t.size(); ++i) torsion.push_back(int_from_json(t[i], at(where + "/torsion", i)));
  return GroupPresentation(r, std::move(torsion));
}

Json to_json(const GroupElement& e) {
  Json a = Json::array();
  for (Int x : e.coords()) a.push_back(to_json(x));
  return a;
}

GroupElement element_from_json(const Json& j, const GroupPresentation& g, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of coordinates");
  if (j.size() != g.dim())
    throw PreconditionViolated(where + ": element has " + std::to_string(j.size()) + " coordinates, " +
                               g.to_string() + " needs " + std::to_string(g.dim()));
  std::vector<Int> c;
  for (std::size_t i = 0; i < j.size(); ++i) c.push_back(int_from_json(j[i], at(where, i)));
  return g.element(std::move(c));
}

Json to_json(const SupportedFunction& f) {
  Json terms = Json::array();
  for (const auto& t : f.terms()) terms.push_back(Json{{"point", to_json(t.point)}, {"coeff", to_json(t.coeff)}});
  return Json{{"terms", terms}};
}

SupportedFunction function_from_json(const Json& j, const GroupPresentation& A, const GroupPresentation& B,
                                     const std::string& where) {
  only_keys(j, {"terms"}, where);
  const Json& terms = array_field(j, "terms", where);
  std::vector<SupportedFunction::Term> out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto w = at(where + "/terms", i);
    only_keys(terms[i], {"point", "coeff"}, w);
    out.push_back({element_from_json(field(terms[i], "point", w), B, w + "/point"),
                   element_from_json(field(terms[i], "coeff", w), A, w + "/coeff")});
  }
  return SupportedFunction::from_terms(A, B, std::move(out));
}

Json to_json(const Certificate& c) {
  Json d = Json::array(), g = Json::array();
  for (const auto& x : c.deltas) d.push_back(to_json(x));
  for (const auto& x : c.subgroup_gens) g.push_back(to_json(x));
  return Json{{"kind", "certificate"}, {"deltas", d}, {"subgroup_gens", g}};
}

Certificate certificate_from_json(const Json& j, const GroupPresentation& B, const std::string& where) {
  only_keys(j, {"kind", "deltas", "subgroup_gens"}, where);
  expect_kind(j, "certificate", where);
  Certificate c;
  const Json& d = array_field(j, "deltas", where);
  for (std::size_t i = 0; i < d.size(); ++i) c.deltas.push_back(element_from_json(d[i], B, at(where + "/deltas", i)));
  const Json& g = array_field(j, "subgroup_gens", where);
  for (std::size_t i = 0; i < g.size(); ++i)
    c.subgroup_gens.push_back(element_from_json(g[i], B, at(where + "/subgroup_gens", i)));
  return c;
}

Json to_json(const WreathElement& w) { return Json{{"delta", to_json(w.delta)}, {"f", to_json(w.f)}}; }

WreathElement wreath_from_json(const Json& j, const GroupPresentation& A, const GroupPresentation& B,
                               const std::string& where) {
  only_keys(j, {"delta", "f"}, where);
  return {element_from_json(field(j, "delta", where), B, where + "/delta"),
          function_from_json(field(j, "f", where), A, B, where + "/f")};
}

Json to_json(const InstanceDoc& d) {
  const auto& inst = d.instance;
  Json fs = Json::array();
  for (const auto& f : inst.fs) fs.push_back(to_json(f));
  Json j{{"kind", "qsp-instance"}, {"A", to_json(inst.A)}, {"B", to_json(inst.B)}, {"h", to_json(inst.h)}, {"fs", fs}};
  if (d.provenance) j["provenance"] = *d.provenance;
  return j;
}

InstanceDoc instance_from_json(const Json& j) {
  only_keys(j, {"kind", "A", "B", "h", "fs", "provenance"}, "");
  expect_kind(j, "qsp-instance", "");
  InstanceDoc d;
  auto& inst = d.instance;
  inst.A = group_from_json(field(j, "A", ""), "/A");
  inst.B = group_from_json(field(j, "B", ""), "/B");
  inst.h = int_from_json(field(j, "h", ""), "/h");
  const Json& fs = array_field(j, "fs", "");
  for (std::size_t i = 0; i < fs.size(); ++i) inst.fs.push_back(function_from_json(fs[i], inst.A, inst.B, at("/fs", i)));
  if (auto it = j.find("provenance"); it != j.end()) d.provenance = *it;
  validate(inst);
  return d;
}

namespace {

Json elements_json(const std::vector<WreathElement>& ws) {
  Json a = Json::array();
  for (const auto& w : ws) a.push_back(to_json(w));
  return a;
}

std::vector<WreathElement> elements_from(const Json& j, const char* key, const GroupPresentation& A,
                                         const GroupPresentation& B, const std::string& where) {
  const Json& a = array_field(j, key, where);
  std::vector<WreathElement> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(wreath_from_json(a[i], A, B, at(where + "/" + key, i)));
  return out;
}

}  // namespace

Json to_json(const EquationDoc& d) {
  const auto& eq = d.equation;
  Json j{{"kind", "equation"},
         {"A", to_json(eq.A)},
         {"B", to_json(eq.B)},
         {"genus", eq.genus},
         {"constants", elements_json(eq.constants)}};
  if (d.assignment)
    j["assignment"] = Json{{"xs", elements_json(d.assignment->xs)},
                           {"ys", elements_json(d.assignment->ys)},
                           {"zs", elements_json(d.assignment->zs)}};
  if (d.provenance) j["provenance"] = *d.provenance;
  return j;
}

EquationDoc equation_from_json(const Json& j) {
  only_keys(j, {"kind", "A", "B", "genus", "constants", "assignment", "provenance"}, "");
  expect_kind(j, "equation", "");
  EquationDoc d;
  auto& eq = d.equation;
  eq.A = group_from_json(field(j, "A", ""), "/A");
  eq.B = group_from_json(field(j, "B", ""), "/B");
  eq.genus = count_from_json(field(j, "genus", ""), "/genus");
  eq.constants = elements_from(j, "constants", eq.A, eq.B, "");
  if (auto it = j.find("assignment"); it != j.end()) {
    only_keys(*it, {"xs", "ys", "zs"}, "/assignment");
    EquationAssignment a;
    a.xs = elements_from(*it, "xs", eq.A, eq.B, "/assignment");
    a.ys = elements_from(*it, "ys", eq.A, eq.B, "/assignment");
    a.zs = elements_from(*it, "zs", eq.A, eq.B, "/assignment");
    if (a.xs.size() != eq.genus || a.ys.size() != eq.genus || a.zs.size() != eq.constants.size())
      throw PreconditionViolated("/assignment: shape does not match the equation");
    d.assignment = std::move(a);
  }
  if (auto it = j.find("provenance"); it != j.end()) d.provenance = *it;
  return d;
}

std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace wreath::io

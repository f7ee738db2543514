// wreath-dio: command-line front end.
//
// Exit codes: 0 positive / valid, 1 negative / invalid, 2 unknown (budget),
// 3 malformed input, 4 precondition or shape error, 5 anything else.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "wreath/errors.hpp"
#include "wreath/hardness.hpp"
#include "wreath/json_codec.hpp"
#include "wreath/random.hpp"
#include "wreath/solvers.hpp"
#include "wreath/wreath.hpp"

using namespace wreath;
using io::Json;

namespace {

enum Exit { kPositive = 0, kNegative = 1, kUnknown = 2, kParse = 3, kPrecondition = 4, kOther = 5 };

int exit_code(Decision d) {
  switch (d) {
    case Decision::positive: return kPositive;
    case Decision::negative: return kNegative;
    case Decision::unknown: return kUnknown;
  }
  return kOther;
}

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes via a temporary file in the same directory and a rename, so readers
// never see a partial file.
void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text << std::flush;
    return;
  }
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw IoError("cannot rename onto " + path + ": " + ec.message());
  }
}

void setup_logging() {
  auto logger = spdlog::stderr_logger_st("wreath-dio");
  logger->set_pattern("[%l] %v");
  logger->set_level(spdlog::level::warn);
  if (const char* env = std::getenv("WREATH_DIO_LOG")) {
    auto level = spdlog::level::from_str(env);
    // from_str maps unknown names to off; only honour real names.
    if (level != spdlog::level::off || std::string(env) == "off") logger->set_level(level);
    else logger->warn("ignoring WREATH_DIO_LOG={}", env);
  }
  spdlog::set_default_logger(logger);
}

// Z, Z^3, Z6, Z2xZ4xZ, 1 (trivial). Factors need not form a divisibility
// chain; the result is put into invariant-factor form.
GroupPresentation parse_group(const std::string& text) {
  if (text == "1" || text == "trivial") return GroupPresentation();
  std::size_t free_rank = 0;
  std::vector<Int> torsion;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, 'x')) {
    if (part.empty() || part[0] != 'Z') throw PreconditionViolated("bad group factor \"" + part + "\" in " + text);
    std::string rest = part.substr(1);
    try {
      if (rest.empty()) {
        ++free_rank;
      } else if (rest[0] == '^') {
        free_rank += std::stoul(rest.substr(1));
      } else {
        std::size_t used = 0;
        Int n = std::stoll(rest, &used);
        if (used != rest.size() || n < 1) throw std::invalid_argument(rest);
        torsion.push_back(n);
      }
    } catch (const std::logic_error&) {
      throw PreconditionViolated("bad group factor \"" + part + "\" in " + text);
    }
  }
  const std::size_t n = torsion.size() + free_rank;
  IntMatrix rel(0, n);
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    std::vector<mpz_class> row(n, 0);
    row[i] = torsion[i];
    rel.append_row(row);
  }
  return present(n, rel).target();
}

std::vector<Int> parse_list(const std::string& s, char sep = ',') {
  std::vector<Int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw PreconditionViolated("bad integer \"" + item + "\"");
    }
  }
  return out;
}

struct Common {
  std::uint64_t seed = 0;
  std::string output;
  SolverBudget budget;
  DispatchOptions dispatch;
  std::string method = "auto";
};

Json counters_json(const BudgetCounters& c) {
  return Json{{"ball_elements", c.ball_elements},
              {"subgroup_tuples", c.subgroup_tuples},
              {"delta_tuples", c.delta_tuples}};
}

Json report(const std::string& command, const std::string& digest, const SolveResult& r, double seconds) {
  Json j{{"format", 1},
         {"command", command},
         {"input_digest", "fnv1a64:" + digest},
         {"decision", to_string(r.decision)},
         {"method", to_string(r.method)},
         {"note", r.note},
         {"certificate", r.certificate ? io::to_json(*r.certificate) : Json(nullptr)},
         {"wall_time_seconds", seconds},
         {"counters", counters_json(r.used)}};
  return j;
}

SolveResult run_qsp(const QspInstance& inst, const Common& c) {
  if (c.method == "auto") return dispatch(inst, c.budget, c.dispatch);
  auto m = parse_method(c.method);
  if (!m) throw PreconditionViolated("unknown method " + c.method);
  return solve_with(*m, inst, c.budget);
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_qsp_solve(const std::string& path, const Common& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string text = read_file(path);
  auto doc = io::instance_from_json(io::parse_text(text));
  spdlog::info("instance: {} functions, h = {}, size {}", doc.instance.fs.size(), doc.instance.h,
               instance_size(doc.instance));
  SolveResult r = run_qsp(doc.instance, c);
  spdlog::info("{} decided {} in {:.3f}s", to_string(r.method), to_string(r.decision), since(t0));
  write_output(c.output, io::dump(report("qsp solve", io::fnv1a64(text), r, since(t0))));
  return exit_code(r.decision);
}

int cmd_solve(const std::string& path, const Common& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string text = read_file(path);
  auto doc = io::equation_from_json(io::parse_text(text));
  auto red = reduce_to_qsp(doc.equation);
  if (auto* u = std::get_if<Unsolvable>(&red)) {
    spdlog::info("unsolvable before reduction: {}", u->reason);
    Json j{{"format", 1},
           {"command", "solve"},
           {"input_digest", "fnv1a64:" + io::fnv1a64(text)},
           {"decision", to_string(Decision::negative)},
           {"method", "reduction"},
           {"note", u->reason},
           {"reason", u->reason},
           {"certificate", nullptr},
           {"wall_time_seconds", since(t0)},
           {"counters", counters_json({})}};
    write_output(c.output, io::dump(j));
    return kNegative;
  }
  const auto& reduction = std::get<Reduction>(red);
  SolveResult r = run_qsp(reduction.instance, c);
  Json j = report("solve", io::fnv1a64(text), r, since(t0));
  j["reduced_instance"] = io::to_json(io::InstanceDoc{reduction.instance, std::nullopt});
  write_output(c.output, io::dump(j));
  return exit_code(r.decision);
}

int cmd_verify(const std::string& inst_path, const std::string& cert_path, const Common& c) {
  const std::string text = read_file(inst_path);
  auto doc = io::instance_from_json(io::parse_text(text));
  Json cj = io::parse_text(read_file(cert_path));
  // A run report carries its certificate in a field.
  if (cj.is_object() && cj.contains("format")) {
    if (!cj.contains("certificate") || cj["certificate"].is_null())
      throw io::FormatError("/certificate: report has no certificate");
    cj = cj["certificate"];
  }
  Certificate cert = io::certificate_from_json(cj, doc.instance.B);
  const bool ok = verify_certificate(doc.instance, cert);
  Json j{{"format", 1}, {"command", "qsp verify"}, {"input_digest", "fnv1a64:" + io::fnv1a64(text)}, {"valid", ok}};
  write_output(c.output, io::dump(j));
  return ok ? kPositive : kNegative;
}

int cmd_oracle(const std::string& path, Int radius, std::uint64_t cap, const Common& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string text = read_file(path);
  auto doc = io::equation_from_json(io::parse_text(text));
  const auto& eq = doc.equation;
  auto bf = equation_brute_force(eq, radius, cap);
  // Without a witness the answer is only final when the window is the whole
  // group, which needs A and B finite.
  bool exhaustive = eq.A.is_finite() && eq.B.is_finite() &&
                    enumerate_ball(eq.B, radius).size() == all_elements(eq.B).size();
  Decision d = bf.solvable ? Decision::positive : exhaustive ? Decision::negative : Decision::unknown;
  Json j{{"format", 1},
         {"command", "oracle"},
         {"input_digest", "fnv1a64:" + io::fnv1a64(text)},
         {"decision", to_string(d)},
         {"method", "brute-force"},
         {"note", bf.solvable ? "" : exhaustive ? "no assignment exists" : "no assignment in the window"},
         {"assignments_tried", bf.tried},
         {"wall_time_seconds", since(t0)}};
  if (bf.witness)
    j["assignment"] = io::to_json(io::EquationDoc{eq, bf.witness, std::nullopt})["assignment"];
  write_output(c.output, io::dump(j));
  return exit_code(d);
}

Json params_group(const GroupPresentation& g) { return io::to_json(g); }

// 3k values in the open window (L/4, L/2) summing to kL; the last value is
// forced and the draw repeated until it fits.
std::vector<Int> random_3part(Rng& rng, Int k, Int target) {
  const Int lo = target / 4 + 1, hi = (target - 1) / 2;
  if (k < 1 || lo > hi) throw PreconditionViolated("no values fit strictly between L/4 and L/2");
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::vector<Int> v;
    Int sum = 0;
    for (Int i = 0; i + 1 < 3 * k; ++i) {
      v.push_back(rng.range(lo, hi));
      sum += v.back();
    }
    Int last = k * target - sum;
    if (last < lo || last > hi) continue;
    v.push_back(last);
    return v;
  }
  throw PreconditionViolated("could not sample a 3-partition multiset");
}

int emit_instance(const QspInstance& inst, Json provenance, const Common& c) {
  write_output(c.output, io::dump(io::to_json(io::InstanceDoc{inst, std::move(provenance)})));
  return 0;
}

Json provenance(const std::string& gen, Json params, const Common& c) {
  return Json{{"tool", "wreath-dio"}, {"generator", gen}, {"params", std::move(params)}, {"seed", c.seed}};
}

struct GenArgs {
  std::string values;
  Int k = 2;
  Int target = 0;
  std::string A = "Z2";
  std::string B = "Z";
  Int h = 2;
  Int cap = kDefaultUnaryCap;
  std::string matrix;
  std::size_t n = 3;
  std::size_t genus = 1;
  std::size_t constants = 2;
  Int radius = 3;
  std::size_t support = 3;
};

std::vector<Int> three_part_values(const GenArgs& g, const Common& c) {
  if (!g.values.empty()) return parse_list(g.values);
  Rng rng(c.seed);
  Int target = g.target > 0 ? g.target : 12 + static_cast<Int>(rng.below(12));
  return random_3part(rng, g.k, target);
}

Json values_json(const std::vector<Int>& v) {
  Json a = Json::array();
  for (Int x : v) a.push_back(io::to_json(x));
  return a;
}

int cmd_gen(const std::string& kind, const GenArgs& g, const Common& c) {
  if (kind == "3part-h0") {
    auto values = three_part_values(g, c);
    ThreePartInstance t(values);
    GroupPresentation A = parse_group(g.A), B = parse_group(g.B);
    if (A.is_trivial()) throw PreconditionViolated("A must be nontrivial");
    if (B.free_rank() == 0) throw PreconditionViolated("B needs a free factor");
    auto inst = gen_3part_h0(t, A.generator(0), B.generator(B.dim() - 1), g.cap);
    return emit_instance(inst, provenance(kind, Json{{"values", values_json(values)}, {"A", params_group(A)},
                                                     {"B", params_group(B)}, {"unary_cap", g.cap}}, c),
                         c);
  }
  if (kind == "3part-midh") {
    auto values = three_part_values(g, c);
    ThreePartInstance t(values);
    auto inst = gen_3part_midh(t, g.h, g.cap);
    return emit_instance(inst, provenance(kind, Json{{"values", values_json(values)}, {"h", g.h}, {"unary_cap", g.cap}}, c), c);
  }
  if (kind == "zoe") {
    std::vector<std::vector<Int>> rows;
    if (!g.matrix.empty()) {
      std::stringstream ss(g.matrix);
      std::string row;
      while (std::getline(ss, row, ';')) rows.push_back(parse_list(row));
    } else {
      Rng rng(c.seed);
      rows.assign(g.n, std::vector<Int>(g.n));
      for (auto& r : rows)
        for (auto& x : r) x = rng.coin() ? 1 : 0;
    }
    ZoeInstance m(rows);
    Json mj = Json::array();
    for (const auto& r : rows) mj.push_back(values_json(r));
    return emit_instance(gen_zoe(m), provenance(kind, Json{{"matrix", mj}}, c), c);
  }
  if (kind == "solvable") {
    GroupPresentation A = parse_group(g.A), B = parse_group(g.B);
    SolvableParams p;
    p.genus = g.genus;
    p.constants = g.constants;
    p.radius = g.radius;
    p.support = g.support;
    auto ge = gen_solvable(c.seed, A, B, p);
    Json params{{"A", params_group(A)}, {"B", params_group(B)}, {"genus", g.genus},
                {"constants", g.constants}, {"radius", g.radius}, {"support", g.support}};
    io::EquationDoc doc{ge.equation, ge.assignment, provenance(kind, params, c)};
    write_output(c.output, io::dump(io::to_json(doc)));
    return 0;
  }
  throw PreconditionViolated("unknown generator " + kind);
}

void add_budget_flags(CLI::App* app, Common& c) {
  app->add_option("--method", c.method, "auto, big-h, finite-b, single-f, bounded-m or general")
      ->check(CLI::IsMember({"auto", "big-h", "finite-b", "single-f", "bounded-m", "general"}));
  app->add_option("--budget-delta-tuples", c.budget.max_delta_tuples, "shift tuples / search nodes");
  app->add_option("--budget-subgroup-tuples", c.budget.max_subgroup_tuples, "candidate subgroups");
  app->add_option("--budget-ball-elements", c.budget.max_ball_elements, "enumerated ball elements");
  app->add_option("--budget-seconds", c.budget.time_limit_seconds, "wall-clock limit");
  app->add_option("--bounded-m-limit", c.dispatch.bounded_m_limit, "largest m routed to bounded-m");
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Decide quadratic equations over wreath products of abelian groups"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--seed", common.seed, "random seed (default 0)");
  app.add_option("--output,-o", common.output, "write the result here instead of standard output");

  std::string path, cert_path;
  auto* solve = app.add_subcommand("solve", "decide an equation");
  solve->add_option("equation", path, "equation JSON")->required();
  add_budget_flags(solve, common);

  auto* qsp = app.add_subcommand("qsp", "quotient sum problem instances");
  qsp->require_subcommand(1);
  auto* qsolve = qsp->add_subcommand("solve", "decide a QSP instance");
  qsolve->add_option("instance", path, "instance JSON")->required();
  add_budget_flags(qsolve, common);
  auto* verify = qsp->add_subcommand("verify", "check a certificate");
  verify->add_option("instance", path, "instance JSON")->required();
  verify->add_option("certificate", cert_path, "certificate JSON or a run report")->required();

  GenArgs gargs;
  auto* gen = app.add_subcommand("gen", "generate instances");
  gen->require_subcommand(1);
  auto add_3part = [&](CLI::App* s) {
    s->add_option("--values", gargs.values, "comma-separated multiset; random when absent");
    s->add_option("--k", gargs.k, "number of triples for a random multiset");
    s->add_option("--target", gargs.target, "triple sum L for a random multiset");
    s->add_option("--unary-cap", gargs.cap, "largest accepted L * k");
  };
  auto* g3 = gen->add_subcommand("3part-h0", "3-partition as a QSP instance with h = 0");
  add_3part(g3);
  g3->add_option("--A", gargs.A, "coefficient group, e.g. Z2 or Z");
  g3->add_option("--B", gargs.B, "base group with a free factor, e.g. Z or Z2xZ");
  auto* gm = gen->add_subcommand("3part-midh", "3-partition over Z^h");
  add_3part(gm);
  gm->set_help_flag("--help", "Print this help message and exit");
  gm->add_option("--h", gargs.h, "rank of the base group");
  auto* gz = gen->add_subcommand("zoe", "zero-one equations");
  gz->add_option("--matrix", gargs.matrix, "rows separated by ';', entries by ','; random when absent");
  gz->add_option("--n", gargs.n, "size of a random matrix");
  auto* gs = gen->add_subcommand("solvable", "an equation with a known solution");
  gs->add_option("--A", gargs.A, "coefficient group");
  gs->add_option("--B", gargs.B, "base group");
  gs->add_option("--genus", gargs.genus);
  gs->add_option("--constants", gargs.constants);
  gs->add_option("--radius", gargs.radius, "length bound for sampled shifts and values");
  gs->add_option("--support", gargs.support, "largest support of sampled functions");

  Int radius = 1;
  std::uint64_t max_assignments = 50'000'000;
  auto* oracle = app.add_subcommand("oracle", "brute-force an equation over a window");
  oracle->add_option("equation", path, "equation JSON")->required();
  oracle->add_option("--radius", radius, "window radius");
  oracle->add_option("--budget-assignments", max_assignments, "largest number of assignments to try");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kPrecondition;
  }

  try {
    if (*solve) return cmd_solve(path, common);
    if (*qsolve) return cmd_qsp_solve(path, common);
    if (*verify) return cmd_verify(path, cert_path, common);
    if (*oracle) return cmd_oracle(path, radius, max_assignments, common);
    for (auto* s : gen->get_subcommands())
      if (*s) return cmd_gen(s->get_name(), gargs, common);
  } catch (const io::FormatError& e) {
    spdlog::error("{}", e.what());
    return kParse;
  } catch (const PreconditionViolated& e) {
    spdlog::error("{}", e.what());
    return kPrecondition;
  } catch (const GroupMismatch& e) {
    spdlog::error("{}", e.what());
    return kPrecondition;
  } catch (const BudgetExceeded& e) {
    spdlog::error("budget exceeded: {}", e.what());
    return kUnknown;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kOther;
  }
  return kOther;
}

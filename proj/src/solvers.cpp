#include "wreath/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "wreath/errors.hpp"
#include "wreath/lattice.hpp"

namespace wreath {

std::string to_string(Decision d) {
  switch (d) {
    case Decision::positive: return "positive";
    case Decision::negative: return "negative";
    case Decision::unknown: return "unknown-budget";
  }
  return "?";
}

std::string to_string(Method m) {
  switch (m) {
    case Method::trivial: return "trivial";
    case Method::big_h: return "big-h";
    case Method::finite_b: return "finite-B";
    case Method::single_f: return "single-f";
    case Method::bounded_m: return "bounded-m";
    case Method::general: return "general";
  }
  return "?";
}

std::optional<Method> parse_method(const std::string& s) {
  if (s == "big-h") return Method::big_h;
  if (s == "finite-b" || s == "finite-B") return Method::finite_b;
  if (s == "single-f") return Method::single_f;
  if (s == "bounded-m") return Method::bounded_m;
  if (s == "general") return Method::general;
  return std::nullopt;
}

namespace {

class Clock {
 public:
  explicit Clock(double limit) : start_(std::chrono::steady_clock::now()), limit_(limit) {}
  void check() const {
    std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start_;
    if (dt.count() > limit_) throw BudgetExceeded("time limit of " + std::to_string(limit_) + " s reached");
  }

 private:
  std::chrono::steady_clock::time_point start_;
  double limit_;
};

bool total_sum_zero(const QspInstance& inst) {
  GroupElement s = inst.A.zero();
  for (const auto& f : inst.fs) s += total_sum(f);
  return s.is_zero();
}

bool all_zero(const QspInstance& inst) {
  return std::all_of(inst.fs.begin(), inst.fs.end(), [](const SupportedFunction& f) { return f.is_zero(); });
}

SolveResult negative(Method m, const BudgetCounters& used, std::string note = {}) {
  return {Decision::negative, m, std::nullopt, used, std::move(note)};
}

SolveResult unknown(Method m, const BudgetCounters& used, std::string note) {
  return {Decision::unknown, m, std::nullopt, used, std::move(note)};
}

// Turns a raw solution into a certificate: shifts bounded by sum size(f_i),
// generators taken from the difference set of the resulting sum, then checked.
SolveResult positive(const QspInstance& inst, Method m, std::vector<GroupElement> deltas,
                     std::vector<GroupElement> gens, const BudgetCounters& used, std::string note = {}) {
  Certificate cert;
  if (inst.fs.empty()) {
    cert = Certificate{};
  } else {
    Subgroup n(inst.B, std::move(gens));
    deltas = normalize_deltas(inst.fs, deltas, n);
    SupportedFunction c = shifted_sum(inst.fs, deltas);
    Subgroup small = shrink_subgroup(c, n);
    cert = Certificate{std::move(deltas), irredundant_generators(small)};
  }
  if (!verify_certificate(inst, cert))
    throw std::logic_error(to_string(m) + " produced a certificate that does not verify");
  return {Decision::positive, m, std::move(cert), used, std::move(note)};
}

SolveResult trivially_positive(const QspInstance& inst, Method m, const BudgetCounters& used, std::string note) {
  return positive(inst, m, std::vector<GroupElement>(inst.fs.size(), inst.B.zero()), {}, used, std::move(note));
}

std::string function_key(const SupportedFunction& f) {
  std::string k;
  auto put = [&k](Int v) { k.append(reinterpret_cast<const char*>(&v), sizeof v); };
  for (const auto& t : f.terms()) {
    for (Int v : t.point.coords()) put(v);
    for (Int v : t.coeff.coords()) put(v);
  }
  return k;
}

std::string matrix_key(const IntMatrix& m) {
  std::ostringstream os;
  os << m;
  return os.str();
}

// Subgroups of a finite group with their ranks and quotient maps, built by
// closure from the trivial group and shared between calls.
struct SubgroupEntry {
  Subgroup group;
  std::size_t rank;
  Quotient map;
};

const std::vector<SubgroupEntry>& subgroup_lattice(const GroupPresentation& B, std::uint64_t cap) {
  static std::mutex mu;
  static std::map<std::string, std::vector<SubgroupEntry>> cache;
  const std::string name = B.to_string();
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(name);
    if (it != cache.end()) return it->second;
  }
  auto elems = all_elements(B, cap);
  std::vector<SubgroupEntry> out;
  std::unordered_set<std::string> seen;
  std::vector<Subgroup> queue{Subgroup(B)};
  seen.insert(matrix_key(detail::subgroup_key(queue[0])));
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Subgroup s = queue[head];
    for (const auto& x : elems) {
      if (x.is_zero()) continue;
      auto gens = s.generators();
      gens.push_back(x);
      Subgroup t(B, gens);
      if (seen.insert(matrix_key(detail::subgroup_key(t))).second) {
        queue.push_back(Subgroup(B, irredundant_generators(t)));
        if (queue.size() > cap) throw BudgetExceeded("subgroup lattice too large");
      }
    }
  }
  for (auto& s : queue) out.push_back({s, subgroup_rank(s), Quotient(B, s)});
  std::stable_sort(out.begin(), out.end(),
                   [](const SubgroupEntry& a, const SubgroupEntry& b) { return a.rank < b.rank; });
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(name, std::move(out)).first->second;
}

template <class F>
void for_each_combination(std::size_t n, std::size_t k, F&& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    if (fn(idx)) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Nonzero elements of a list with one of each pair {x, -x} kept.
std::vector<GroupElement> up_to_sign(const std::vector<GroupElement>& xs) {
  std::vector<GroupElement> out;
  for (const auto& x : xs) {
    if (x.is_zero()) continue;
    GroupElement y = -x;
    if (y < x && std::binary_search(xs.begin(), xs.end(), y)) continue;
    out.push_back(x);
  }
  return out;
}

}  // namespace

SolveResult solve_big_h(const QspInstance& inst, const SolverBudget&) {
  validate(inst);
  if (inst.h < static_cast<Int>(group_rank(inst.B)))
    throw PreconditionViolated("big-h needs h >= rank(B)");
  BudgetCounters used;
  if (!total_sum_zero(inst)) return negative(Method::big_h, used, "total sum nonzero");
  return positive(inst, Method::big_h, std::vector<GroupElement>(inst.fs.size(), inst.B.zero()),
                  Subgroup::whole(inst.B).generators(), used);
}

SolveResult solve_finite_b(const QspInstance& inst, const SolverBudget& budget) {
  validate(inst);
  if (!inst.B.is_finite()) throw PreconditionViolated("finite-B needs a finite base group");
  BudgetCounters used;
  Clock clock(budget.time_limit_seconds);
  try {
    if (!total_sum_zero(inst)) return negative(Method::finite_b, used, "total sum nonzero");
    auto elems = all_elements(inst.B, budget.max_ball_elements);
    used.ball_elements += elems.size();

    struct Entry {
      SupportedFunction value;
      std::vector<GroupElement> deltas;
    };
    std::map<std::string, Entry> level;
    level.emplace("", Entry{SupportedFunction(inst.A, inst.B), {}});
    for (const auto& f : inst.fs) {
      std::vector<SupportedFunction> shifts;
      for (const auto& d : elems) shifts.push_back(shift(f, d));
      std::map<std::string, Entry> next;
      for (const auto& [key, e] : level) {
        for (std::size_t k = 0; k < elems.size(); ++k) {
          if (++used.delta_tuples > budget.max_delta_tuples)
            throw BudgetExceeded("Minkowski sum exceeded " + std::to_string(budget.max_delta_tuples) + " states");
          SupportedFunction v = e.value + shifts[k];
          std::string vk = function_key(v);
          if (next.count(vk)) continue;
          auto ds = e.deltas;
          ds.push_back(elems[k]);
          next.emplace(std::move(vk), Entry{std::move(v), std::move(ds)});
        }
        if ((used.delta_tuples & 1023) == 0) clock.check();
      }
      level = std::move(next);
    }
    const auto& lattice = subgroup_lattice(inst.B, budget.max_subgroup_tuples);
    for (const auto& s : lattice) {
      if (static_cast<Int>(s.rank) > inst.h) continue;
      ++used.subgroup_tuples;
      for (const auto& [key, e] : level)
        if (is_zero_mod(e.value, s.map))
          return positive(inst, Method::finite_b, e.deltas, s.group.generators(), used);
      clock.check();
    }
    return negative(Method::finite_b, used);
  } catch (const BudgetExceeded& e) {
    return unknown(Method::finite_b, used, e.what());
  }
}

SolveResult solve_single_f(const QspInstance& inst, const SolverBudget& budget) {
  validate(inst);
  if (inst.fs.size() != 1) throw PreconditionViolated("single-f needs exactly one function");
  if (!inst.B.torsion().empty()) throw PreconditionViolated("single-f needs a torsion-free base group");
  BudgetCounters used;
  Clock clock(budget.time_limit_seconds);
  const auto& f = inst.fs[0];
  const auto& B = inst.B;
  if (f.is_zero()) return trivially_positive(inst, Method::single_f, used, "zero function");
  if (!total_sum_zero(inst)) return negative(Method::single_f, used, "total sum nonzero");

  const std::vector<GroupElement> diffs = up_to_sign(difference_set(f));
  std::vector<RatVector> rat;
  for (const auto& d : diffs) {
    auto l = lift(d);
    rat.emplace_back(l.begin(), l.end());
  }
  const auto& terms = f.terms();
  try {
    const std::size_t ymax = std::min<std::size_t>(static_cast<std::size_t>(inst.h), B.dim());
    for (std::size_t y = 1; y <= ymax; ++y) {
      std::optional<std::vector<GroupElement>> found;
      for_each_combination(diffs.size(), y, [&](const std::vector<std::size_t>& idx) {
        if (++used.subgroup_tuples > budget.max_subgroup_tuples)
          throw BudgetExceeded("more than " + std::to_string(budget.max_subgroup_tuples) + " subsets");
        if ((used.subgroup_tuples & 255) == 0) clock.check();
        std::vector<RatVector> span;
        for (auto i : idx) span.push_back(rat[i]);
        if (rational_rank(span) < y) return false;  // a smaller subset spans the same space
        // Points collapse when their difference lies in the rational span.
        std::vector<int> cls(terms.size(), -1);
        int next = 0;
        for (std::size_t a = 0; a < terms.size(); ++a) {
          if (cls[a] >= 0) continue;
          cls[a] = next;
          GroupElement sum = terms[a].coeff;
          for (std::size_t b = a + 1; b < terms.size(); ++b) {
            if (cls[b] >= 0) continue;
            auto dl = lift(terms[a].point - terms[b].point);
            if (span_membership(span, RatVector(dl.begin(), dl.end()))) {
              cls[b] = next;
              sum += terms[b].coeff;
            }
          }
          if (!sum.is_zero()) return false;
          ++next;
        }
        std::vector<IntVector> ints;
        for (auto i : idx) ints.push_back(lift(diffs[i]));
        std::vector<GroupElement> gens;
        for (const auto& v : saturation(ints, B.dim())) {
          std::vector<Int> c;
          for (const auto& x : v) c.push_back(to_int(x));
          gens.push_back(B.element(std::move(c)));
        }
        found = std::move(gens);
        return true;
      });
      if (found) return positive(inst, Method::single_f, {B.zero()}, *found, used);
    }
  } catch (const BudgetExceeded& e) {
    return unknown(Method::single_f, used, e.what());
  }
  return negative(Method::single_f, used);
}

SolveResult solve_bounded_m(const QspInstance& inst, const SolverBudget& budget) {
  validate(inst);
  if (inst.h >= static_cast<Int>(group_rank(inst.B)))
    throw PreconditionViolated("bounded-m needs h < rank(B); use big-h");
  BudgetCounters used;
  Clock clock(budget.time_limit_seconds);
  const auto& B = inst.B;
  if (all_zero(inst)) return trivially_positive(inst, Method::bounded_m, used, "all functions zero");
  if (!total_sum_zero(inst)) return negative(Method::bounded_m, used, "total sum nonzero");
  try {
    const Int R = instance_size(inst);
    auto ball = enumerate_ball(B, R, budget.max_ball_elements);
    used.ball_elements += ball.size();
    const std::size_t m = inst.fs.size();
    long double tuples = 1;
    for (std::size_t i = 0; i < m; ++i) tuples *= static_cast<long double>(ball.size());
    if (tuples > static_cast<long double>(budget.max_delta_tuples))
      throw BudgetExceeded("ball of radius " + std::to_string(R) + " gives too many shift tuples");

    // Generators of Euclidean norm <= 2^{rank/2} size(I); an L1 ball of
    // radius sqrt(rank) times that bound contains them all.
    std::vector<SubgroupEntry> subgroups{{Subgroup(B), 0, Quotient(B, Subgroup(B))}};
    if (inst.h > 0) {
      const std::size_t rk = group_rank(B);
      mpz_class bound_sq = mpz_class(R) * R;
      bound_sq <<= rk;
      mpz_class l1_sq = bound_sq * static_cast<unsigned long>(rk);
      mpz_class l1 = sqrt(l1_sq);
      if (l1 * l1 < l1_sq) ++l1;
      std::vector<GroupElement> short_vectors;
      BallStream stream(B, to_int(l1), budget.max_ball_elements);
      while (auto x = stream.next())
        if (symmetric_norm_sq(*x) <= bound_sq) short_vectors.push_back(std::move(*x));
      used.ball_elements += stream.produced();
      short_vectors = up_to_sign(short_vectors);
      std::unordered_set<std::string> seen{matrix_key(detail::subgroup_key(subgroups[0].group))};
      for (std::size_t y = 1; y <= static_cast<std::size_t>(inst.h); ++y) {
        for_each_combination(short_vectors.size(), y, [&](const std::vector<std::size_t>& idx) {
          if (++used.subgroup_tuples > budget.max_subgroup_tuples)
            throw BudgetExceeded("more than " + std::to_string(budget.max_subgroup_tuples) + " generator tuples");
          std::vector<GroupElement> gens;
          for (auto i : idx) gens.push_back(short_vectors[i]);
          Subgroup s(B, gens);
          if (seen.insert(matrix_key(detail::subgroup_key(s))).second) {
            std::size_t r = subgroup_rank(s);
            if (static_cast<Int>(r) <= inst.h) subgroups.push_back({s, r, Quotient(B, s)});
          }
          return false;
        });
        clock.check();
      }
    }

    std::vector<std::vector<SupportedFunction>> shifted(m);
    for (std::size_t i = 0; i < m; ++i)
      for (const auto& d : ball) shifted[i].push_back(shift(inst.fs[i], d));
    std::vector<std::size_t> idx(m, 0);
    for (;;) {
      ++used.delta_tuples;
      if ((used.delta_tuples & 1023) == 0) clock.check();
      SupportedFunction c(inst.A, B);
      for (std::size_t i = 0; i < m; ++i) c += shifted[i][idx[i]];
      for (const auto& s : subgroups) {
        if (is_zero_mod(c, s.map)) {
          std::vector<GroupElement> deltas;
          for (auto k : idx) deltas.push_back(ball[k]);
          return positive(inst, Method::bounded_m, deltas, s.group.generators(), used);
        }
      }
      std::size_t i = 0;
      while (i < m && ++idx[i] == ball.size()) idx[i++] = 0;
      if (i == m) break;
    }
  } catch (const BudgetExceeded& e) {
    return unknown(Method::bounded_m, used, e.what());
  }
  return negative(Method::bounded_m, used);
}

namespace {

// Branch and bound over partial sums.
//
// A node fixes shifts for some functions and a subgroup G contained in the
// sought N, and keeps the partial sum reduced modulo G. Its least support
// point p must cancel in the end, so either an unplaced function covers p
// (its shift can then be taken to align a support point with p exactly, as
// shifts only matter modulo N), or another point of the sum is identified
// with p by N (so p - p' joins G). A sum that vanishes modulo G leaves the
// remaining functions to cancel among themselves, which is invariant under a
// common translation, so the next one can be anchored at shift 0.
class GeneralSearch {
 public:
  GeneralSearch(const QspInstance& inst, const SolverBudget& budget, BudgetCounters& used)
      : inst_(inst), budget_(budget), used_(used), clock_(budget.time_limit_seconds) {
    const std::size_t m = inst.fs.size();
    cls_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      cls_[i] = i;
      for (std::size_t j = 0; j < i; ++j)
        if (inst.fs[j] == inst.fs[i]) {
          cls_[i] = cls_[j];
          break;
        }
    }
    torsion_free_ = inst.B.torsion().empty();
  }

  std::optional<std::pair<std::vector<GroupElement>, std::vector<GroupElement>>> run() {
    Node root{{}, Quotient(inst_.B, Subgroup(inst_.B)), {}, std::vector<std::optional<GroupElement>>(inst_.fs.size()), {}, 0, {}, {}, 0};
    root.key = matrix_key(detail::subgroup_key(Subgroup(inst_.B)));
    root.rank = 0;
    for (std::size_t i = 0; i < inst_.fs.size(); ++i)
      if (inst_.fs[i].is_zero()) root.deltas[i] = inst_.B.zero();
    if (!dfs(root)) return std::nullopt;
    return std::make_pair(std::move(solution_deltas_), std::move(solution_gens_));
  }

 private:
  struct Cell {
    GroupElement value;  // in A
    GroupElement rep;    // a point of B over this class
  };
  struct Node {
    std::vector<GroupElement> gens;
    Quotient q;
    std::map<GroupElement, Cell> sum;  // keyed by point of B/G
    std::vector<std::optional<GroupElement>> deltas;
    std::string key;
    std::size_t rank = 0;
    std::vector<GroupElement> apart;  // differences N must avoid
    // While the least cell is floor_cell, functions below floor_next do not
    // reach it.
    std::optional<GroupElement> floor_cell;
    std::size_t floor_next = 0;
  };

  static std::size_t min_index(const Node& n) {
    return n.floor_cell && *n.floor_cell == n.sum.begin()->first ? n.floor_next : 0;
  }

  void tick() {
    if (++used_.delta_tuples > budget_.max_delta_tuples)
      throw BudgetExceeded("search exceeded " + std::to_string(budget_.max_delta_tuples) + " nodes");
    if ((used_.delta_tuples & 1023) == 0) clock_.check();
  }

  static void add_point(Node& n, const GroupElement& b, const GroupElement& a) {
    GroupElement qp = n.q.project(b);
    auto it = n.sum.find(qp);
    if (it == n.sum.end()) {
      n.sum.emplace(std::move(qp), Cell{a, b});
    } else {
      it->second.value += a;
      if (it->second.value.is_zero()) n.sum.erase(it);
    }
  }

  Node place(const Node& n, std::size_t i, const GroupElement& d) const {
    Node c = n;
    c.deltas[i] = d;
    for (const auto& t : inst_.fs[i].terms()) add_point(c, t.point - d, t.coeff);
    return c;
  }

  std::optional<Node> widen(const Node& n, const GroupElement& g, std::vector<GroupElement> apart) const {
    std::vector<GroupElement> gens = n.gens;
    gens.push_back(g);
    Subgroup s(inst_.B, gens);
    const std::size_t rank = subgroup_rank(s);
    if (static_cast<Int>(rank) > inst_.h) return std::nullopt;
    Quotient q(inst_.B, s);
    for (const auto& d : apart)
      if (q.in_kernel(d)) return std::nullopt;
    Node c{std::move(gens), std::move(q), {}, n.deltas, matrix_key(detail::subgroup_key(s)), rank, std::move(apart), {}, 0};
    for (const auto& [p, cell] : n.sum) add_point(c, cell.rep, cell.value);
    return c;
  }

  bool frozen(const Node& n) const {
    if (inst_.h == 0) return true;
    return torsion_free_ && static_cast<Int>(n.rank) == inst_.h && n.q.target().torsion().empty();
  }

  std::string memo_key(const Node& n) const {
    std::string k = n.key;
    k.push_back('|');
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < n.deltas.size(); ++i)
      if (!n.deltas[i]) open.push_back(cls_[i]);
    std::sort(open.begin(), open.end());
    for (auto c : open) k += std::to_string(c) + ",";
    k.push_back('|');
    const GroupElement base = n.sum.begin()->first;
    std::vector<std::pair<GroupElement, GroupElement>> pts;
    for (const auto& [p, cell] : n.sum) pts.emplace_back(p - base, cell.value);
    std::sort(pts.begin(), pts.end());
    for (const auto& [p, v] : pts) k += p.to_string() + v.to_string();
    if (const std::size_t lo = min_index(n); lo > 0) k += "|>" + std::to_string(lo);
    if (!n.apart.empty() && !frozen(n)) {
      std::vector<GroupElement> apart;
      for (const auto& d : n.apart) {
        GroupElement e = n.q.project(d);
        apart.push_back(std::max(e, -e));
      }
      std::sort(apart.begin(), apart.end());
      apart.erase(std::unique(apart.begin(), apart.end()), apart.end());
      k.push_back('|');
      for (const auto& d : apart) k += d.to_string();
    }
    return k;
  }

  bool dfs(const Node& n) {
    tick();
    if (n.sum.empty()) {
      std::optional<std::size_t> next;
      for (std::size_t i = 0; i < n.deltas.size(); ++i)
        if (!n.deltas[i] && (!next || inst_.fs[i].support_size() > inst_.fs[*next].support_size())) next = i;
      if (!next) {
        for (const auto& d : n.deltas) solution_deltas_.push_back(*d);
        solution_gens_ = n.gens;
        return true;
      }
      Node child = place(n, *next, inst_.B.zero());
      child.floor_cell.reset();
      return dfs(child);
    }

    if (!feasible(n) || !cells_coverable(n)) return false;

    std::string key = memo_key(n);
    if (failed_.count(key)) return false;

    const GroupElement p = n.sum.begin()->second.rep;
    const bool open = !frozen(n);
    // Either another cell of the sum ends up in the cell of p, or none does
    // and an unplaced function covers p. Each branch records the merges it
    // rules out, so the branches do not revisit each other's solutions.
    std::vector<GroupElement> others;
    if (open)
      for (auto it = std::next(n.sum.begin()); it != n.sum.end(); ++it) others.push_back(p - it->second.rep);
    // Several functions may cover p; they are placed in increasing order.
    for (std::size_t i = min_index(n); i < n.deltas.size(); ++i) {
      if (n.deltas[i]) continue;
      bool twin = false;
      for (std::size_t j = 0; j < i; ++j)
        if (!n.deltas[j] && cls_[j] == cls_[i]) twin = true;
      if (twin) continue;
      std::vector<GroupElement> tried;
      for (const auto& t : inst_.fs[i].terms()) {
        GroupElement d = t.point - p;
        if (std::find(tried.begin(), tried.end(), d) != tried.end()) continue;
        tried.push_back(d);
        Node child = place(n, i, d);
        child.apart.insert(child.apart.end(), others.begin(), others.end());
        child.floor_cell = n.sum.begin()->first;
        child.floor_next = i + 1;
        if (dfs(child)) return true;
      }
    }
    for (std::size_t k = 0; k < others.size(); ++k) {
      std::vector<GroupElement> apart = n.apart;
      apart.insert(apart.end(), others.begin(), others.begin() + static_cast<std::ptrdiff_t>(k));
      auto child = widen(n, others[k], std::move(apart));
      if (child && dfs(*child)) return true;
    }
    failed_.insert(std::move(key));
    return false;
  }

  // Every cell must be cancelled by cells it may still merge with and by
  // the unplaced functions allowed to reach it.
  bool cells_coverable(const Node& n) const {
    const std::size_t t0 = inst_.A.torsion().size(), dim = inst_.A.dim();
    struct Mass {
      std::vector<Int> pos, neg;
      bool any = false;
      void add(const GroupElement& a, std::size_t t0) {
        any = true;
        for (std::size_t j = t0; j < a.coords().size(); ++j) {
          if (a[j] > 0) pos[j] = checked_add(pos[j], a[j]);
          else neg[j] = checked_sub(neg[j], a[j]);
        }
      }
      bool pays(const GroupElement& v, std::size_t t0) const {
        if (!any) return false;
        for (std::size_t j = t0; j < v.coords().size(); ++j)
          if ((v[j] > 0 && neg[j] < v[j]) || (v[j] < 0 && pos[j] < -v[j])) return false;
        return true;
      }
    };
    const Mass empty{std::vector<Int>(dim, 0), std::vector<Int>(dim, 0)};
    Mass all = empty, late = empty;
    const std::size_t lo = min_index(n);
    for (std::size_t i = 0; i < n.deltas.size(); ++i)
      if (!n.deltas[i])
        for (const auto& t : inst_.fs[i].terms()) {
          all.add(t.coeff, t0);
          if (i >= lo) late.add(t.coeff, t0);
        }

    const bool open = !frozen(n);
    std::vector<GroupElement> banned;
    for (const auto& d : n.apart) {
      GroupElement e = n.q.project(d);
      banned.push_back(std::max(e, -e));
    }
    std::sort(banned.begin(), banned.end());
    banned.erase(std::unique(banned.begin(), banned.end()), banned.end());
    bool first = true;
    for (const auto& [x, cx] : n.sum) {
      Mass m = first ? late : all;
      first = false;
      for (const auto& [y, cy] : n.sum) {
        if (!open || &cx == &cy) continue;
        GroupElement e = x - y;
        if (!std::binary_search(banned.begin(), banned.end(), std::max(e, -e))) m.add(cy.value, t0);
      }
      if (!m.pays(cx.value, t0)) return false;
    }
    return true;
  }

  // Necessary conditions once N can no longer merge cells of the sum. With
  // G frozen the cells are final; with rank G = h, N still lies in the
  // preimage of the torsion of B/G, so cells are compared after dropping the
  // torsion coordinates of B/G. Unplaced functions can touch at most as many
  // cells as they have support points, and per free coordinate of A the
  // positive parts of the cells must be paid by their negative coefficients
  // and vice versa.
  bool feasible(const Node& n) const {
    std::map<GroupElement, GroupElement> cells;
    if (frozen(n)) {
      for (const auto& [p, cell] : n.sum) cells.emplace(p, cell.value);
    } else if (static_cast<Int>(n.rank) == inst_.h) {
      const GroupPresentation& t = n.q.target();
      const std::size_t skip = t.torsion().size();
      const GroupPresentation free = GroupPresentation::free(t.dim() - skip);
      for (const auto& [p, cell] : n.sum) {
        GroupElement key = free.element(std::vector<Int>(p.coords().begin() + static_cast<std::ptrdiff_t>(skip), p.coords().end()));
        auto [it, fresh] = cells.emplace(key, cell.value);
        if (!fresh) it->second += cell.value;
      }
      std::erase_if(cells, [](const auto& kv) { return kv.second.is_zero(); });
    } else {
      return true;
    }

    std::size_t capacity = 0;
    const std::size_t t0 = inst_.A.torsion().size(), dim = inst_.A.dim();
    std::vector<Int> pos_left(dim, 0), neg_left(dim, 0), pos_need(dim, 0), neg_need(dim, 0);
    for (std::size_t i = 0; i < n.deltas.size(); ++i)
      if (!n.deltas[i]) {
        capacity += inst_.fs[i].support_size();
        for (const auto& t : inst_.fs[i].terms())
          for (std::size_t j = t0; j < dim; ++j) {
            if (t.coeff[j] > 0) pos_left[j] = checked_add(pos_left[j], t.coeff[j]);
            else neg_left[j] = checked_sub(neg_left[j], t.coeff[j]);
          }
      }
    if (cells.size() > capacity) return false;
    for (const auto& [p, v] : cells)
      for (std::size_t j = t0; j < dim; ++j) {
        if (v[j] > 0) pos_need[j] = checked_add(pos_need[j], v[j]);
        else neg_need[j] = checked_sub(neg_need[j], v[j]);
      }
    for (std::size_t j = t0; j < dim; ++j)
      if (pos_need[j] > neg_left[j] || neg_need[j] > pos_left[j]) return false;
    return true;
  }

  const QspInstance& inst_;
  const SolverBudget& budget_;
  BudgetCounters& used_;
  Clock clock_;
  std::vector<std::size_t> cls_;
  bool torsion_free_ = false;
  std::unordered_set<std::string> failed_;
  std::vector<GroupElement> solution_deltas_;
  std::vector<GroupElement> solution_gens_;
};

}  // namespace

SolveResult solve_general(const QspInstance& inst, const SolverBudget& budget) {
  validate(inst);
  BudgetCounters used;
  if (all_zero(inst)) return trivially_positive(inst, Method::general, used, "all functions zero");
  if (!total_sum_zero(inst)) return negative(Method::general, used, "total sum nonzero");
  try {
    GeneralSearch search(inst, budget, used);
    auto sol = search.run();
    if (!sol) return negative(Method::general, used);
    return positive(inst, Method::general, std::move(sol->first), std::move(sol->second), used);
  } catch (const BudgetExceeded& e) {
    return unknown(Method::general, used, e.what());
  }
}

SolveResult solve_with(Method method, const QspInstance& inst, const SolverBudget& budget) {
  switch (method) {
    case Method::trivial:
    case Method::general: return solve_general(inst, budget);
    case Method::big_h: return solve_big_h(inst, budget);
    case Method::finite_b: return solve_finite_b(inst, budget);
    case Method::single_f: return solve_single_f(inst, budget);
    case Method::bounded_m: return solve_bounded_m(inst, budget);
  }
  throw std::logic_error("unhandled method");
}

SolveResult dispatch(const QspInstance& inst, const SolverBudget& budget, const DispatchOptions& opts) {
  validate(inst);
  if (inst.A.is_trivial()) return trivially_positive(inst, Method::trivial, {}, "trivial coefficient group");
  if (inst.h >= static_cast<Int>(group_rank(inst.B))) return solve_big_h(inst, budget);
  if (inst.B.is_finite()) return solve_finite_b(inst, budget);
  if (inst.fs.size() == 1 && inst.B.torsion().empty()) return solve_single_f(inst, budget);
  if (inst.fs.size() <= opts.bounded_m_limit) {
    SolveResult r = solve_bounded_m(inst, budget);
    if (r.decision != Decision::unknown) return r;
    SolveResult g = solve_general(inst, budget);
    g.note = "bounded-m out of budget (" + r.note + ")" + (g.note.empty() ? "" : "; " + g.note);
    return g;
  }
  return solve_general(inst, budget);
}

}  // namespace wreath

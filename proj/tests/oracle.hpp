#pragma once

// Brute-force QSP reference used by the tests. It works on raw coordinate
// vectors with its own modular arithmetic and only borrows the instance
// types from the library, so agreement with the solvers means something.

#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "wreath/qsp.hpp"

namespace oracle {

using wreath::Int;
using Vec = std::vector<Int>;

// Moduli per coordinate; 0 marks a free coordinate.
inline Vec moduli(const wreath::GroupPresentation& g) {
  Vec m(g.torsion().begin(), g.torsion().end());
  m.resize(g.dim(), 0);
  return m;
}

inline Vec reduce(Vec v, const Vec& mods) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (mods[i] != 0) v[i] = ((v[i] % mods[i]) + mods[i]) % mods[i];
  return v;
}

inline Vec add(const Vec& a, const Vec& b, const Vec& mods) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return reduce(r, mods);
}

inline Vec sub(const Vec& a, const Vec& b, const Vec& mods) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return reduce(r, mods);
}

inline bool is_finite(const Vec& mods) {
  for (Int m : mods)
    if (m == 0) return false;
  return true;
}

inline std::vector<Vec> elements(const Vec& mods) {
  if (!is_finite(mods)) throw std::logic_error("oracle: infinite group");
  std::vector<Vec> out{Vec(mods.size(), 0)};
  for (std::size_t i = 0; i < mods.size(); ++i) {
    std::vector<Vec> next;
    for (const auto& v : out)
      for (Int x = 0; x < mods[i]; ++x) {
        Vec w = v;
        w[i] = x;
        next.push_back(w);
      }
    out = std::move(next);
  }
  return out;
}

inline std::set<Vec> closure(const std::vector<Vec>& gens, const Vec& mods) {
  std::set<Vec> seen{Vec(mods.size(), 0)};
  std::vector<Vec> todo{Vec(mods.size(), 0)};
  while (!todo.empty()) {
    Vec x = todo.back();
    todo.pop_back();
    for (const auto& g : gens) {
      Vec y = add(x, g, mods);
      if (seen.insert(y).second) todo.push_back(y);
    }
  }
  return seen;
}

struct FiniteSubgroup {
  std::set<Vec> members;
  std::size_t rank;
  std::vector<Vec> gens;
};

// Every subgroup of a finite group, each with its least generating-set size.
inline std::vector<FiniteSubgroup> all_subgroups(const Vec& mods) {
  const auto elems = elements(mods);
  std::map<std::set<Vec>, FiniteSubgroup> found;
  const std::size_t max_gens = mods.size();
  // Generating sets of size k, smallest first, so the first hit gives the rank.
  for (std::size_t k = 0; k <= max_gens; ++k) {
    std::vector<std::size_t> idx(k, 0);
    for (;;) {
      std::vector<Vec> gens;
      for (auto i : idx) gens.push_back(elems[i]);
      auto s = closure(gens, mods);
      if (!found.count(s)) found.emplace(s, FiniteSubgroup{s, k, gens});
      std::size_t p = 0;
      while (p < k && ++idx[p] == elems.size()) idx[p++] = 0;
      if (p == k) break;
    }
  }
  std::vector<FiniteSubgroup> out;
  for (auto& [k, v] : found) out.push_back(std::move(v));
  return out;
}

inline std::vector<std::pair<Vec, Vec>> terms_of(const wreath::SupportedFunction& f) {
  std::vector<std::pair<Vec, Vec>> out;
  for (const auto& t : f.terms()) out.emplace_back(t.point.coords(), t.coeff.coords());
  return out;
}

// Point -> value of sum f_i^{delta_i}, keyed by a coset label.
template <class Label>
bool vanishes(const wreath::QspInstance& inst, const std::vector<Vec>& deltas, Label label) {
  const Vec am = moduli(inst.A), bm = moduli(inst.B);
  std::map<Vec, Vec> acc;
  for (std::size_t i = 0; i < inst.fs.size(); ++i)
    for (const auto& [p, a] : terms_of(inst.fs[i])) {
      Vec key = label(sub(p, deltas[i], bm));
      auto it = acc.find(key);
      if (it == acc.end()) acc.emplace(key, a);
      else it->second = add(it->second, a, am);
    }
  for (const auto& [k, v] : acc)
    for (Int x : v)
      if (x != 0) return false;
  return true;
}

inline Vec coset_label(const Vec& x, const std::set<Vec>& members, const Vec& mods) {
  Vec best;
  bool first = true;
  for (const auto& n : members) {
    Vec y = add(x, n, mods);
    if (first || y < best) best = y;
    first = false;
  }
  return best;
}

inline Int gcd_all(const std::vector<Vec>& gens) {
  Int g = 0;
  for (const auto& v : gens) g = std::gcd(g, v.at(0));
  return g;
}

// Independent certificate check for finite B or B = Z.
inline bool verify(const wreath::QspInstance& inst, const wreath::Certificate& cert) {
  const Vec bm = moduli(inst.B);
  if (cert.deltas.size() != inst.fs.size()) return false;
  std::vector<Vec> deltas, gens;
  for (const auto& d : cert.deltas) deltas.push_back(reduce(d.coords(), bm));
  for (const auto& g : cert.subgroup_gens) gens.push_back(reduce(g.coords(), bm));
  if (is_finite(bm)) {
    auto members = closure(gens, bm);
    std::size_t rank = 0;
    for (const auto& s : all_subgroups(bm))
      if (s.members == members) rank = s.rank;
    if (static_cast<Int>(rank) > inst.h) return false;
    return vanishes(inst, deltas, [&](const Vec& x) { return coset_label(x, members, bm); });
  }
  if (bm != Vec{0}) throw std::logic_error("oracle: only finite B or Z");
  const Int d = gcd_all(gens);
  if (d != 0 && inst.h < 1) return false;
  return vanishes(inst, deltas, [&](const Vec& x) { return d == 0 ? x : Vec{((x[0] % d) + d) % d}; });
}

// Double exhaustion: every shift tuple (first shift pinned to 0, which loses
// nothing since a common translation preserves solutions) against every
// admissible subgroup. For B = Z shifts range over [-window, window].
inline std::optional<wreath::Certificate> solve(const wreath::QspInstance& inst, Int window = 0) {
  const Vec bm = moduli(inst.B);
  const std::size_t m = inst.fs.size();
  auto to_cert = [&](const std::vector<Vec>& ds, const std::vector<Vec>& gs) {
    wreath::Certificate c;
    for (const auto& d : ds) c.deltas.push_back(inst.B.element(d));
    for (const auto& g : gs) c.subgroup_gens.push_back(inst.B.element(g));
    return c;
  };
  std::vector<Vec> range;
  if (is_finite(bm)) {
    range = elements(bm);
  } else if (bm == Vec{0}) {
    for (Int x = -window; x <= window; ++x) range.push_back({x});
  } else {
    throw std::logic_error("oracle: only finite B or Z");
  }
  std::vector<FiniteSubgroup> subs;
  if (is_finite(bm)) {
    for (auto& s : all_subgroups(bm))
      if (static_cast<Int>(s.rank) <= inst.h) subs.push_back(std::move(s));
  } else {
    subs.push_back({{Vec{0}}, 0, {}});
    if (inst.h >= 1) subs.push_back({{}, 1, {Vec{1}}});  // N = Z; any dZ is contained in it
  }
  if (m == 0) return to_cert({}, {});
  std::vector<std::size_t> idx(m, 0);
  const std::size_t zero_at = static_cast<std::size_t>(
      std::find(range.begin(), range.end(), Vec(bm.size(), 0)) - range.begin());
  idx[0] = zero_at;
  for (;;) {
    std::vector<Vec> ds;
    for (auto i : idx) ds.push_back(range[i]);
    for (const auto& s : subs) {
      bool ok;
      if (is_finite(bm)) {
        ok = vanishes(inst, ds, [&](const Vec& x) { return coset_label(x, s.members, bm); });
      } else if (s.gens.empty()) {
        ok = vanishes(inst, ds, [](const Vec& x) { return x; });
      } else {
        ok = vanishes(inst, ds, [](const Vec&) { return Vec{}; });
      }
      if (ok) return to_cert(ds, s.gens);
    }
    std::size_t p = 1;
    while (p < m && ++idx[p] == range.size()) idx[p++] = 0;
    if (p >= m) break;
  }
  return std::nullopt;
}

}  // namespace oracle

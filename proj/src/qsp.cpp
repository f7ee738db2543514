#include "wreath/qsp.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <unordered_map>

#include "wreath/errors.hpp"

namespace wreath {

void validate(const QspInstance& inst) {
  if (inst.h < 0) throw PreconditionViolated("h must be non-negative");
  for (const auto& f : inst.fs)
    if (!(f.coeff_group() == inst.A) || !(f.base_group() == inst.B))
      throw GroupMismatch("function over " + f.coeff_group().to_string() + "^" + f.base_group().to_string() +
                          " in an instance over " + inst.A.to_string() + "^" + inst.B.to_string());
}

Int presentation_size(const GroupPresentation& g) {
  Int s = static_cast<Int>(g.free_rank());
  for (Int a : g.torsion()) s = checked_add(s, a);
  return s;
}

Int functions_size(const std::vector<SupportedFunction>& fs) {
  Int s = 0;
  for (const auto& f : fs) s = checked_add(s, function_size(f));
  return s;
}

Int instance_size(const QspInstance& inst) {
  return checked_add(checked_add(presentation_size(inst.A), presentation_size(inst.B)),
                     checked_add(functions_size(inst.fs), inst.h));
}

SupportedFunction shifted_sum(const std::vector<SupportedFunction>& fs, const std::vector<GroupElement>& deltas) {
  if (fs.size() != deltas.size())
    throw PreconditionViolated("expected " + std::to_string(fs.size()) + " shifts, got " +
                               std::to_string(deltas.size()));
  if (fs.empty()) return {};
  SupportedFunction s(fs[0].coeff_group(), fs[0].base_group());
  for (std::size_t i = 0; i < fs.size(); ++i) s += shift(fs[i], deltas[i]);
  return s;
}

bool verify_certificate(const QspInstance& inst, const Certificate& cert) {
  validate(inst);
  if (cert.deltas.size() != inst.fs.size())
    throw PreconditionViolated("certificate has " + std::to_string(cert.deltas.size()) + " shifts for " +
                               std::to_string(inst.fs.size()) + " functions");
  for (const auto& d : cert.deltas)
    if (!(d.group() == inst.B)) throw GroupMismatch("certificate shift outside B");
  Subgroup n(inst.B, cert.subgroup_gens);
  if (static_cast<Int>(subgroup_rank(n)) > inst.h) return false;
  if (inst.fs.empty()) return true;
  return is_zero_mod(shifted_sum(inst.fs, cert.deltas), n);
}

std::size_t ClusterPartition::block_of(std::size_t i) const {
  for (std::size_t b = 0; b < blocks.size(); ++b)
    if (std::find(blocks[b].begin(), blocks[b].end(), i) != blocks[b].end()) return b;
  throw PreconditionViolated("index " + std::to_string(i) + " is not covered by the partition");
}

bool ClusterPartition::refines(const ClusterPartition& coarser) const {
  for (const auto& b : blocks) {
    if (b.empty()) continue;
    std::size_t target = coarser.block_of(b[0]);
    for (std::size_t i : b)
      if (coarser.block_of(i) != target) return false;
  }
  return true;
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

ClusterPartition components(UnionFind& uf, std::size_t n) {
  std::vector<std::vector<std::size_t>> by_root(n);
  for (std::size_t i = 0; i < n; ++i) by_root[uf.find(i)].push_back(i);
  ClusterPartition p;
  for (auto& b : by_root)
    if (!b.empty()) p.blocks.push_back(std::move(b));
  return p;
}

// Projected support of each shifted function.
std::vector<std::vector<GroupElement>> projected_supports(const std::vector<SupportedFunction>& fs,
                                                          const std::vector<GroupElement>& deltas,
                                                          const Quotient& q) {
  std::vector<std::vector<GroupElement>> out(fs.size());
  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (const auto& t : fs[i].terms()) out[i].push_back(q.project(t.point - deltas[i]));
    std::sort(out[i].begin(), out[i].end());
    out[i].erase(std::unique(out[i].begin(), out[i].end()), out[i].end());
  }
  return out;
}

bool meets(const std::vector<GroupElement>& a, const std::vector<GroupElement>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j)
      ++i;
    else
      ++j;
  }
  return false;
}

bool connected_without(const std::vector<std::size_t>& verts, std::size_t skip,
                       const std::vector<std::vector<bool>>& adj) {
  std::vector<std::size_t> rest;
  for (std::size_t v : verts)
    if (v != skip) rest.push_back(v);
  if (rest.size() <= 1) return true;
  std::set<std::size_t> seen{rest[0]};
  std::vector<std::size_t> stack{rest[0]};
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w : rest)
      if (!seen.count(w) && adj[v][w]) {
        seen.insert(w);
        stack.push_back(w);
      }
  }
  return seen.size() == rest.size();
}

}  // namespace

ClusterPartition clusters(const std::vector<SupportedFunction>& fs, const std::vector<GroupElement>& deltas,
                          const Subgroup& n) {
  if (fs.size() != deltas.size()) throw PreconditionViolated("clusters: shift count mismatch");
  UnionFind uf(fs.size());
  if (!fs.empty()) {
    Quotient q(n.ambient(), n);
    std::unordered_map<GroupElement, std::size_t, GroupElementHash> owner;
    for (std::size_t i = 0; i < fs.size(); ++i)
      for (const auto& t : fs[i].terms()) {
        auto [it, fresh] = owner.emplace(q.project(t.point - deltas[i]), i);
        if (!fresh) uf.unite(it->second, i);
      }
  }
  return components(uf, fs.size());
}

std::vector<GroupElement> cluster_shift(const std::vector<SupportedFunction>& fs,
                                        const std::vector<GroupElement>& deltas, const Subgroup& n,
                                        const std::vector<std::size_t>& block, const GroupElement& shift_by) {
  std::vector<std::size_t> sorted = block;
  std::sort(sorted.begin(), sorted.end());
  auto part = clusters(fs, deltas, n);
  if (std::find(part.blocks.begin(), part.blocks.end(), sorted) == part.blocks.end())
    throw PreconditionViolated("cluster_shift: not a block of the cluster partition");
  std::vector<GroupElement> out = deltas;
  for (std::size_t i : sorted) out[i] += shift_by;
  return out;
}

std::vector<GroupElement> normalize_deltas(const std::vector<SupportedFunction>& fs,
                                           const std::vector<GroupElement>& deltas, const Subgroup& n) {
  const auto& B = n.ambient();
  Quotient q(B, n);
  if (!fs.empty() && !is_zero_mod(shifted_sum(fs, deltas), q))
    throw PreconditionViolated("normalize_deltas: input is not a solution");
  std::vector<GroupElement> out = deltas;
  auto proj = projected_supports(fs, deltas, q);
  const std::size_t m = fs.size();
  std::vector<std::vector<bool>> adj(m, std::vector<bool>(m, false));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) adj[i][j] = adj[j][i] = meets(proj[i], proj[j]);

  for (const auto& block : clusters(fs, deltas, n).blocks) {
    if (block.size() == 1 && fs[block[0]].is_zero()) {
      out[block[0]] = B.zero();
      continue;
    }
    // Peel off non-cut vertices, highest index first.
    std::vector<std::size_t> remaining = block;
    std::vector<std::size_t> removed;
    while (remaining.size() > 1) {
      for (std::size_t k = remaining.size(); k-- > 0;) {
        if (connected_without(remaining, remaining[k], adj)) {
          removed.push_back(remaining[k]);
          remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(k));
          break;
        }
      }
    }
    std::vector<std::size_t> aligned{remaining[0]};
    for (auto it = removed.rbegin(); it != removed.rend(); ++it) {
      const std::size_t j = *it;
      std::optional<std::pair<GroupElement, GroupElement>> pick;  // (p_i, p_j)
      std::vector<std::size_t> nbrs;
      for (std::size_t i : aligned)
        if (adj[i][j]) nbrs.push_back(i);
      std::sort(nbrs.begin(), nbrs.end());
      const std::size_t i = nbrs.at(0);
      for (const auto& s : fs[i].terms()) {
        GroupElement pi = s.point - out[i];
        GroupElement img = q.project(pi);
        for (const auto& t : fs[j].terms()) {
          GroupElement pj = t.point - out[j];
          if (!(q.project(pj) == img)) continue;
          if (!pick || std::tie(pi, pj) < std::tie(pick->first, pick->second)) pick.emplace(pi, pj);
        }
      }
      // Moving p_j onto p_i changes delta_j by an element of N.
      out[j] = out[j] + pick->second - pick->first;
      aligned.push_back(j);
    }
    std::optional<GroupElement> least;
    for (std::size_t i : block)
      for (const auto& t : fs[i].terms()) {
        GroupElement p = t.point - out[i];
        if (!least || p < *least) least = p;
      }
    for (std::size_t i : block) out[i] += *least;
  }
  return out;
}

std::vector<GroupElement> difference_set(const SupportedFunction& f) {
  std::vector<GroupElement> s;
  for (const auto& a : f.terms())
    for (const auto& b : f.terms()) s.push_back(a.point - b.point);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

Subgroup shrink_subgroup(const SupportedFunction& f, const Subgroup& n) {
  const auto& B = n.ambient();
  if (n.generators().empty()) return Subgroup(B);
  Quotient q(B, n);
  std::vector<GroupElement> gens;
  for (const auto& d : difference_set(f))
    if (!d.is_zero() && q.in_kernel(d)) gens.push_back(d);
  return Subgroup(B, std::move(gens));
}

std::vector<GroupElement> irredundant_generators(const Subgroup& s) {
  std::vector<GroupElement> gens;
  for (const auto& g : s.generators())
    if (!g.is_zero()) gens.push_back(g);
  const IntMatrix key = detail::subgroup_key(s);
  for (std::size_t i = gens.size(); i-- > 0;) {
    std::vector<GroupElement> rest = gens;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    if (detail::subgroup_key(Subgroup(s.ambient(), rest)) == key) gens = std::move(rest);
  }
  return gens;
}

}  // namespace wreath

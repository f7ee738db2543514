#include "wreath/lattice.hpp"

#include <algorithm>

#include "wreath/errors.hpp"

namespace wreath {

namespace {

mpq_class dot(const RatVector& a, const RatVector& b) {
  mpq_class s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RatVector to_rat(const IntVector& v) { return RatVector(v.begin(), v.end()); }

// Nearest integer, halves rounded up.
mpz_class round_nearest(const mpq_class& q) {
  mpq_class shifted = q + mpq_class(1, 2);
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
  return r;
}

}  // namespace

IntMatrix to_matrix(const LatticeBasis& b) {
  IntMatrix m(0, b.dim);
  for (const auto& v : b.vectors) m.append_row(v);
  return m;
}

GramSchmidt gram_schmidt(const std::vector<IntVector>& vs) {
  GramSchmidt gs;
  const std::size_t n = vs.size();
  gs.mu.assign(n, std::vector<mpq_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    RatVector vi = to_rat(vs[i]);
    RatVector star = vi;
    for (std::size_t j = 0; j < i; ++j) {
      if (gs.norm_sq[j] == 0) continue;
      gs.mu[i][j] = dot(vi, gs.ortho[j]) / gs.norm_sq[j];
      for (std::size_t c = 0; c < star.size(); ++c) star[c] -= gs.mu[i][j] * gs.ortho[j][c];
    }
    gs.mu[i][i] = 1;
    gs.norm_sq.push_back(dot(star, star));
    gs.ortho.push_back(std::move(star));
  }
  return gs;
}

LatticeBasis lll_reduce(const LatticeBasis& basis) {
  const mpq_class delta(3, 4);
  std::vector<IntVector> b = basis.vectors;
  const std::size_t n = b.size();
  for (const auto& v : b)
    if (v.size() != basis.dim) throw PreconditionViolated("basis vector of wrong length");
  GramSchmidt gs = gram_schmidt(b);
  for (const auto& q : gs.norm_sq)
    if (q == 0) throw PreconditionViolated("lll_reduce: input vectors are linearly dependent");

  std::size_t k = 1;
  while (k < n) {
    for (std::size_t j = k; j-- > 0;) {
      mpz_class q = round_nearest(gs.mu[k][j]);
      if (q == 0) continue;
      for (std::size_t c = 0; c < basis.dim; ++c) b[k][c] -= q * b[j][c];
      // Size reduction leaves v* unchanged; only row k of mu moves.
      for (std::size_t l = 0; l <= j; ++l) gs.mu[k][l] -= q * gs.mu[j][l];
    }
    mpq_class lhs = delta * gs.norm_sq[k - 1];
    mpq_class rhs = gs.norm_sq[k] + gs.mu[k][k - 1] * gs.mu[k][k - 1] * gs.norm_sq[k - 1];
    if (lhs <= rhs) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      gs = gram_schmidt(b);
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  return {basis.dim, std::move(b)};
}

bool is_lll_reduced(const LatticeBasis& basis, const mpq_class& delta) {
  GramSchmidt gs = gram_schmidt(basis.vectors);
  const std::size_t n = basis.vectors.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (gs.norm_sq[i] == 0) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (abs(gs.mu[i][j]) > mpq_class(1, 2)) return false;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    mpq_class proj = gs.norm_sq[i + 1] + gs.mu[i + 1][i] * gs.mu[i + 1][i] * gs.norm_sq[i];
    if (delta * gs.norm_sq[i] > proj) return false;
  }
  return true;
}

LatticeBasis basis_of_span(const std::vector<IntVector>& vs, std::size_t dim) {
  IntMatrix m(0, dim);
  for (const auto& v : vs) m.append_row(v);
  IntMatrix h = m.rows() ? hermite_form(m) : m;
  LatticeBasis out{dim, {}};
  for (std::size_t r = 0; r < h.rows(); ++r) out.vectors.push_back(h.row(r));
  return out;
}

std::size_t rational_rank(const std::vector<RatVector>& vs) {
  if (vs.empty()) return 0;
  std::vector<RatVector> a = vs;
  const std::size_t cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      if (a[i][c] == 0) continue;
      mpq_class f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

bool span_membership(const std::vector<RatVector>& vectors, const RatVector& v) {
  bool zero = std::all_of(v.begin(), v.end(), [](const mpq_class& x) { return x == 0; });
  if (zero) return true;
  if (vectors.empty()) return false;
  std::vector<RatVector> ext = vectors;
  ext.push_back(v);
  return rational_rank(ext) == rational_rank(vectors);
}

std::vector<IntVector> saturation(const std::vector<IntVector>& vs, std::size_t dim) {
  IntMatrix m(0, dim);
  for (const auto& v : vs) m.append_row(v);
  if (m.rows() == 0 || dim == 0) return {};
  auto snf = smith_normal_form(m);
  std::size_t r = 0;
  for (std::size_t i = 0; i < std::min(m.rows(), dim); ++i)
    if (snf.D(i, i) != 0) ++r;
  IntMatrix vinv = unimodular_inverse(snf.V);
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < r; ++i) out.push_back(vinv.row(i));
  return out;
}

IntVector symmetric_lift(const GroupElement& g) {
  const auto G = g.group();
  IntVector out(G.dim());
  for (std::size_t i = 0; i < G.dim(); ++i) {
    Int a = G.modulus(i);
    Int x = g[i];
    out[i] = to_mpz(a != 0 && 2 * x > a ? x - a : x);
  }
  return out;
}

mpz_class symmetric_norm_sq(const GroupElement& g) {
  mpz_class s = 0;
  for (const auto& x : symmetric_lift(g)) s += x * x;
  return s;
}

std::vector<GroupElement> bounded_generators(const Subgroup& s, const mpz_class& k_sq) {
  const auto& G = s.ambient();
  std::vector<IntVector> lifts;
  for (const auto& g : s.generators()) {
    if (symmetric_norm_sq(g) > k_sq)
      throw PreconditionViolated("bounded_generators: generator " + g.to_string() + " exceeds the norm bound");
    if (!g.is_zero()) lifts.push_back(symmetric_lift(g));
  }
  if (lifts.empty()) return {};
  LatticeBasis reduced = lll_reduce(basis_of_span(lifts, G.dim()));

  std::vector<GroupElement> gens;
  for (const auto& v : reduced.vectors) {
    std::vector<Int> c(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) c[i] = to_int(v[i]);
    GroupElement e = G.element(std::move(c));
    if (!e.is_zero()) gens.push_back(std::move(e));
  }
  // Reduction mod the torsion can make generators redundant; drop them.
  const IntMatrix key = detail::subgroup_key(s);
  for (std::size_t i = gens.size(); i-- > 0;) {
    std::vector<GroupElement> rest = gens;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    if (detail::subgroup_key(Subgroup(G, rest)) == key) gens = std::move(rest);
  }
  return gens;
}

}  // namespace wreath

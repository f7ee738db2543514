#include "wreath/abelian.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "wreath/errors.hpp"

namespace wreath {

namespace {

const detail::GroupData* intern(std::size_t free_rank, std::vector<Int> torsion) {
  using Key = std::pair<std::size_t, std::vector<Int>>;
  static std::mutex mu;
  static std::map<Key, std::unique_ptr<detail::GroupData>> table;
  std::lock_guard<std::mutex> lock(mu);
  Key key{free_rank, torsion};
  auto it = table.find(key);
  if (it == table.end()) {
    auto d = std::make_unique<detail::GroupData>();
    d->free_rank = free_rank;
    d->torsion = std::move(torsion);
    it = table.emplace(std::move(key), std::move(d)).first;
  }
  return it->second.get();
}

}  // namespace

GroupPresentation::GroupPresentation() : data_(intern(0, {})) {}

GroupPresentation::GroupPresentation(std::size_t free_rank, std::vector<Int> torsion) {
  std::vector<Int> kept;
  for (Int a : torsion) {
    if (a < 1) throw PreconditionViolated("torsion factor must be >= 1, got " + std::to_string(a));
    if (a == 1) continue;
    if (!kept.empty() && a % kept.back() != 0)
      throw PreconditionViolated("torsion factors must form a divisibility chain");
    kept.push_back(a);
  }
  data_ = intern(free_rank, std::move(kept));
}

Int GroupPresentation::order() const {
  if (!is_finite()) throw PreconditionViolated("order of an infinite group");
  Int n = 1;
  for (Int a : torsion()) n = checked_mul(n, a);
  return n;
}

GroupElement GroupPresentation::zero() const { return GroupElement(data_, std::vector<Int>(dim(), 0)); }

GroupElement GroupPresentation::element(std::vector<Int> coords) const {
  if (coords.size() != dim())
    throw GroupMismatch("element has " + std::to_string(coords.size()) + " coordinates, group " +
                        to_string() + " needs " + std::to_string(dim()));
  for (std::size_t i = 0; i < torsion().size(); ++i) coords[i] = mod_floor(coords[i], torsion()[i]);
  return GroupElement(data_, std::move(coords));
}

GroupElement GroupPresentation::generator(std::size_t i) const {
  std::vector<Int> c(dim(), 0);
  c.at(i) = 1;
  return element(std::move(c));
}

std::string GroupPresentation::to_string() const {
  if (is_trivial()) return "1";
  std::ostringstream os;
  bool first = true;
  for (Int a : torsion()) {
    os << (first ? "" : " x ") << "Z_" << a;
    first = false;
  }
  if (free_rank() > 0) {
    os << (first ? "" : " x ") << "Z";
    if (free_rank() > 1) os << '^' << free_rank();
  }
  return os.str();
}

bool GroupElement::is_zero() const {
  for (Int v : coords_)
    if (v != 0) return false;
  return true;
}

void GroupElement::check_same(const GroupElement& o) const {
  if (group_ != o.group_)
    throw GroupMismatch("operands from " + group().to_string() + " and " + o.group().to_string());
}

GroupElement GroupElement::operator-() const {
  GroupElement r = *this;
  const auto& t = group_->torsion;
  for (std::size_t i = 0; i < r.coords_.size(); ++i)
    r.coords_[i] = i < t.size() ? (r.coords_[i] == 0 ? 0 : t[i] - r.coords_[i]) : checked_neg(r.coords_[i]);
  return r;
}

GroupElement& GroupElement::operator+=(const GroupElement& o) {
  check_same(o);
  const auto& t = group_->torsion;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i < t.size()) {
      Int s = coords_[i] + o.coords_[i];  // both in [0, a)
      coords_[i] = s >= t[i] ? s - t[i] : s;
    } else {
      coords_[i] = checked_add(coords_[i], o.coords_[i]);
    }
  }
  return *this;
}

GroupElement& GroupElement::operator-=(const GroupElement& o) { return *this += -o; }

GroupElement operator*(Int k, const GroupElement& a) {
  GroupElement r = a;
  const auto& t = a.group_->torsion;
  for (std::size_t i = 0; i < r.coords_.size(); ++i) {
    if (i < t.size())
      r.coords_[i] = mod_floor(checked_mul(mod_floor(k, t[i]), r.coords_[i]), t[i]);
    else
      r.coords_[i] = checked_mul(k, r.coords_[i]);
  }
  return r;
}

std::string GroupElement::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) os << (i ? "," : "") << coords_[i];
  os << ')';
  return os.str();
}

std::size_t GroupElementHash::operator()(const GroupElement& e) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (Int v : e.coords()) {
    h ^= static_cast<std::uint64_t>(v);
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

Int geodesic_length(const GroupElement& g) {
  const auto G = g.group();
  Int len = 0;
  for (std::size_t i = 0; i < G.dim(); ++i) {
    Int a = G.modulus(i);
    Int x = g[i];
    len = checked_add(len, a == 0 ? abs_int(x) : std::min(x, a - x));
  }
  return len;
}

mpz_class euclidean_norm_sq(const GroupElement& g) {
  mpz_class s = 0;
  for (Int v : g.coords()) s += to_mpz(v) * to_mpz(v);
  return s;
}

std::vector<mpz_class> lift(const GroupElement& g) {
  std::vector<mpz_class> out;
  out.reserve(g.coords().size());
  for (Int v : g.coords()) out.push_back(to_mpz(v));
  return out;
}

Subgroup::Subgroup(GroupPresentation ambient, std::vector<GroupElement> generators)
    : ambient_(ambient), gens_(std::move(generators)) {
  for (const auto& g : gens_)
    if (!(g.group() == ambient_))
      throw GroupMismatch("subgroup generator " + g.to_string() + " is not in " + ambient_.to_string());
}

Subgroup Subgroup::whole(const GroupPresentation& g) {
  std::vector<GroupElement> gens;
  for (std::size_t i = 0; i < g.dim(); ++i) gens.push_back(g.generator(i));
  return Subgroup(g, std::move(gens));
}

namespace {

IntMatrix torsion_relations(const GroupPresentation& g) {
  IntMatrix r(g.torsion().size(), g.dim());
  for (std::size_t i = 0; i < g.torsion().size(); ++i) r(i, i) = to_mpz(g.torsion()[i]);
  return r;
}

IntMatrix preimage_matrix(const Subgroup& s) {
  IntMatrix r = torsion_relations(s.ambient());
  if (r.rows() == 0) r = IntMatrix(0, s.ambient().dim());
  for (const auto& x : s.generators()) r.append_row(lift(x));
  return r;
}

}  // namespace

std::size_t subgroup_rank(const Subgroup& s) {
  const std::size_t k = s.generators().size();
  if (k == 0) return 0;
  const auto& G = s.ambient();
  IntMatrix m(0, G.dim());
  for (const auto& x : s.generators()) m.append_row(lift(x));
  for (std::size_t i = 0; i < G.torsion().size(); ++i) {
    std::vector<mpz_class> row(G.dim());
    row[i] = to_mpz(G.torsion()[i]);
    m.append_row(row);
  }
  if (G.dim() == 0) return 0;
  auto snf = smith_normal_form(m);
  std::size_t rk = 0;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i)
    if (snf.D(i, i) != 0) ++rk;
  // Rows of U past the rank span the left kernel; keep their generator part.
  IntMatrix rel(0, k);
  for (std::size_t r = rk; r < m.rows(); ++r) {
    std::vector<mpz_class> row(k);
    for (std::size_t c = 0; c < k; ++c) row[c] = snf.U(r, c);
    rel.append_row(row);
  }
  if (rel.rows() == 0) return k;
  auto d = smith_diagonal(smith_normal_form(rel).D);
  std::size_t units = 0;
  for (const auto& v : d)
    if (v == 1) ++units;
  return k - units;
}

Quotient::Quotient(const GroupPresentation& g, const Subgroup& n) : source_(g) {
  if (!(n.ambient() == g)) throw GroupMismatch("subgroup of " + n.ambient().to_string() + " used with " + g.to_string());
  const std::size_t dim = g.dim();
  IntMatrix rel = preimage_matrix(n);
  if (rel.rows() == 0) rel = IntMatrix(1, dim);  // keeps the transforms well shaped
  auto snf = smith_normal_form(rel);
  IntMatrix vinv = unimodular_inverse(snf.V);
  std::vector<Int> tors;
  std::size_t free = 0;
  std::vector<std::size_t> torsion_cols, free_cols;
  for (std::size_t j = 0; j < dim; ++j) {
    mpz_class d = j < rel.rows() ? snf.D(j, j) : mpz_class(0);
    if (d == 1) continue;
    if (d == 0) {
      free_cols.push_back(j);
      ++free;
    } else {
      torsion_cols.push_back(j);
      tors.push_back(to_int(d));
    }
  }
  target_ = GroupPresentation(free, tors);
  std::vector<std::size_t> cols = torsion_cols;
  cols.insert(cols.end(), free_cols.begin(), free_cols.end());
  proj_.assign(dim, std::vector<Int>(cols.size(), 0));
  lift_.assign(cols.size(), std::vector<Int>(dim, 0));
  for (std::size_t t = 0; t < cols.size(); ++t) {
    const std::size_t j = cols[t];
    for (std::size_t i = 0; i < dim; ++i) {
      mpz_class v = snf.V(i, j);
      if (t < tors.size()) {
        mpz_class m = to_mpz(tors[t]);
        mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
      }
      proj_[i][t] = to_int(v);
      lift_[t][i] = to_int(vinv(j, i));
    }
  }
}

GroupElement Quotient::project(const GroupElement& x) const {
  if (!(x.group() == source_)) throw GroupMismatch("projecting " + x.to_string() + " from the wrong group");
  const std::size_t td = target_.dim();
  std::vector<Int> y(td, 0);
  const std::size_t nt = target_.torsion().size();
  for (std::size_t i = 0; i < x.coords().size(); ++i) {
    Int xi = x[i];
    if (xi == 0) continue;
    for (std::size_t t = 0; t < td; ++t) {
      if (proj_[i][t] == 0) continue;
      if (t < nt) {
        Int m = target_.torsion()[t];
        y[t] = mod_floor(checked_add(y[t], checked_mul(mod_floor(xi, m), proj_[i][t])), m);
      } else {
        y[t] = checked_add(y[t], checked_mul(xi, proj_[i][t]));
      }
    }
  }
  return target_.element(std::move(y));
}

GroupElement Quotient::lift(const GroupElement& y) const {
  if (!(y.group() == target_)) throw GroupMismatch("lifting " + y.to_string() + " from the wrong group");
  std::vector<Int> x(source_.dim(), 0);
  for (std::size_t t = 0; t < y.coords().size(); ++t)
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = checked_add(x[i], checked_mul(y[t], lift_[t][i]));
  return source_.element(std::move(x));
}

Quotient present(std::size_t generators, const IntMatrix& relations) {
  if (relations.rows() > 0 && relations.cols() != generators)
    throw PreconditionViolated("relation matrix width does not match generator count");
  auto F = GroupPresentation::free(generators);
  std::vector<GroupElement> gens;
  for (std::size_t r = 0; r < relations.rows(); ++r) {
    std::vector<Int> c(generators);
    for (std::size_t j = 0; j < generators; ++j) c[j] = to_int(relations(r, j));
    gens.push_back(F.element(std::move(c)));
  }
  return Quotient(F, Subgroup(F, std::move(gens)));
}

bool contains(const Subgroup& n, const GroupElement& x) {
  if (!(x.group() == n.ambient())) throw GroupMismatch("membership test across groups");
  if (x.is_zero()) return true;
  return Quotient(n.ambient(), n).in_kernel(x);
}

bool same_subgroup(const Subgroup& a, const Subgroup& b) {
  if (!(a.ambient() == b.ambient())) throw GroupMismatch("comparing subgroups of different groups");
  return detail::subgroup_key(a) == detail::subgroup_key(b);
}

IntMatrix detail::subgroup_key(const Subgroup& s) {
  IntMatrix m = preimage_matrix(s);
  if (m.rows() == 0) return IntMatrix(0, s.ambient().dim());
  return hermite_form(m);
}

BallStream::BallStream(GroupPresentation g, Int radius, std::uint64_t cap)
    : g_(g), radius_(radius), cap_(cap), vals_(g.dim(), 0), prefix_(g.dim() + 1, 0) {
  if (radius < 0) throw PreconditionViolated("ball radius must be non-negative");
}

Int BallStream::cost(std::size_t j, Int v) const {
  Int a = g_.modulus(j);
  return a == 0 ? abs_int(v) : std::min(v, a - v);
}

Int BallStream::first_value(std::size_t j, Int budget) const { return g_.modulus(j) == 0 ? -budget : 0; }

std::optional<Int> BallStream::next_value(std::size_t j, Int v, Int budget) const {
  Int a = g_.modulus(j);
  if (a == 0) return v + 1 <= budget ? std::optional<Int>(v + 1) : std::nullopt;
  // Allowed torsion values: [0, budget] and [a - budget, a).
  if (v + 1 <= budget && v + 1 < a) return v + 1;
  Int w = std::max(v + 1, a - budget);
  return w < a ? std::optional<Int>(w) : std::nullopt;
}

void BallStream::fill(std::size_t from) {
  for (std::size_t j = from; j < vals_.size(); ++j) {
    vals_[j] = first_value(j, radius_ - prefix_[j]);
    prefix_[j + 1] = prefix_[j] + cost(j, vals_[j]);
  }
}

std::optional<GroupElement> BallStream::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    fill(0);
  } else {
    bool moved = false;
    for (std::size_t j = vals_.size(); j-- > 0;) {
      if (auto v = next_value(j, vals_[j], radius_ - prefix_[j])) {
        vals_[j] = *v;
        prefix_[j + 1] = prefix_[j] + cost(j, vals_[j]);
        fill(j + 1);
        moved = true;
        break;
      }
    }
    if (!moved) {
      done_ = true;
      return std::nullopt;
    }
  }
  if (++produced_ > cap_) throw BudgetExceeded("ball enumeration exceeded " + std::to_string(cap_) + " elements");
  return g_.element(vals_);
}

std::vector<GroupElement> enumerate_ball(const GroupPresentation& g, Int radius, std::uint64_t cap) {
  std::vector<GroupElement> out;
  BallStream s(g, radius, cap);
  while (auto e = s.next()) out.push_back(std::move(*e));
  return out;
}

std::vector<GroupElement> all_elements(const GroupPresentation& g, std::uint64_t cap) {
  if (!g.is_finite()) throw PreconditionViolated("all_elements of an infinite group");
  if (static_cast<std::uint64_t>(g.order()) > cap)
    throw BudgetExceeded("group of order " + std::to_string(g.order()) + " exceeds element cap");
  Int diam = 0;
  for (Int a : g.torsion()) diam += a / 2;
  return enumerate_ball(g, diam, cap);
}

}  // namespace wreath

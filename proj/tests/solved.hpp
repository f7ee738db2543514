#pragma once

// Random QSP instances with a known solution. Each block of functions is
// closed off by a last function that cancels the rest up to an element of
// the image of lambda, which vanishes modulo N; blocks are then moved apart.

#include <vector>

#include "wreath/group_ring.hpp"
#include "wreath/qsp.hpp"
#include "wreath/random.hpp"

namespace solved {

using namespace wreath;

struct Solved {
  QspInstance inst;
  std::vector<GroupElement> deltas;
  std::vector<GroupElement> gens;
};

inline GroupElement random_element(Rng& rng, const GroupPresentation& g, Int span) {
  std::vector<Int> c(g.dim());
  for (auto& v : c) v = rng.range(-span, span);
  return g.element(c);
}

inline SupportedFunction random_function(Rng& rng, const GroupPresentation& A, const GroupPresentation& B,
                                         std::size_t max_terms, Int span) {
  SupportedFunction f(A, B);
  const std::size_t k = 1 + rng.below(max_terms);
  for (std::size_t i = 0; i < k; ++i)
    f += SupportedFunction::delta(random_element(rng, A, 2), random_element(rng, B, span));
  return f;
}

inline std::vector<GroupPresentation> base_choices() {
  return {GroupPresentation::free(1), GroupPresentation::free(2), GroupPresentation(1, {4}),
          GroupPresentation::cyclic(6), GroupPresentation(0, {2, 2})};
}

inline std::vector<GroupPresentation> coeff_choices() {
  return {GroupPresentation::cyclic(2), GroupPresentation::cyclic(3), GroupPresentation::free(1),
          GroupPresentation(0, {2, 2})};
}

inline Solved random_solved(Rng& rng, Int far = 25) {
  const auto bases = base_choices();
  const auto coeffs = coeff_choices();
  const GroupPresentation B = bases[rng.below(bases.size())];
  const GroupPresentation A = coeffs[rng.below(coeffs.size())];
  Solved s;
  const std::size_t ngens = rng.below(2);
  for (std::size_t i = 0; i < ngens; ++i) s.gens.push_back(random_element(rng, B, 2));
  const Int rank = static_cast<Int>(subgroup_rank(Subgroup(B, s.gens)));
  s.inst = QspInstance{A, B, {}, rank + static_cast<Int>(rng.below(2))};

  const std::size_t blocks = 1 + rng.below(3);
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t m = 1 + rng.below(3);
    std::vector<SupportedFunction> fs;
    std::vector<GroupElement> ds;
    SupportedFunction acc(A, B);
    for (std::size_t i = 0; i + 1 < m; ++i) {
      fs.push_back(random_function(rng, A, B, 3, 2));
      ds.push_back(random_element(rng, B, 2));
      acc += shift(fs.back(), ds.back());
    }
    // Something in the image of lambda for the chosen generators.
    std::vector<SupportedFunction> coef;
    for (std::size_t i = 0; i < s.gens.size(); ++i) coef.push_back(random_function(rng, A, B, 2, 1));
    SupportedFunction target = (coef.empty() ? SupportedFunction(A, B) : lambda_map(coef, s.gens)) - acc;
    ds.push_back(random_element(rng, B, 2));
    fs.push_back(shift(target, -ds.back()));
    // Move the block away from the others.
    GroupElement offset = static_cast<Int>(b) * far * (B.free_rank() > 0 ? B.generator(B.dim() - 1) : B.zero());
    for (std::size_t i = 0; i < m; ++i) {
      s.inst.fs.push_back(fs[i]);
      s.deltas.push_back(ds[i] + offset);
    }
  }
  return s;
}

}  // namespace solved

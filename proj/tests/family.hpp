#pragma once

// The exhaustive tiny-instance family: |A| <= 4, B in {Z_2, Z_4, Z_2 x Z_2}
// or Z with supports in a short window, up to three functions with at most
// two support points, h <= 2. Functions are taken up to translation and the
// tuple up to order, since neither changes the answer.

#include <algorithm>
#include <set>
#include <vector>

#include "wreath/qsp.hpp"

namespace family {

using wreath::GroupElement;
using wreath::GroupPresentation;
using wreath::Int;
using wreath::QspInstance;
using wreath::SupportedFunction;

inline std::vector<GroupPresentation> coefficient_groups() {
  return {GroupPresentation::cyclic(2), GroupPresentation::cyclic(3), GroupPresentation::cyclic(4),
          GroupPresentation(0, {2, 2})};
}

inline std::vector<GroupPresentation> base_groups() {
  return {GroupPresentation::cyclic(2), GroupPresentation::cyclic(4), GroupPresentation(0, {2, 2}),
          GroupPresentation::free(1)};
}

// Points a function may use; for Z a window starting at 0.
inline std::vector<GroupElement> window(const GroupPresentation& B, Int width = 3) {
  if (B.is_finite()) return wreath::all_elements(B);
  std::vector<GroupElement> out;
  for (Int x = 0; x < width; ++x) out.push_back(B.element({x}));
  return out;
}

// Least translate (by the order of term lists) of f.
inline std::vector<std::pair<GroupElement, GroupElement>> flat(const SupportedFunction& f) {
  std::vector<std::pair<GroupElement, GroupElement>> out;
  for (const auto& t : f.terms()) out.emplace_back(t.point, t.coeff);
  return out;
}

inline SupportedFunction canonical(const SupportedFunction& f) {
  if (f.is_zero()) return f;
  SupportedFunction best = f;
  for (const auto& t : f.terms()) {
    SupportedFunction g = wreath::shift(f, t.point);
    if (flat(g) < flat(best)) best = g;
  }
  return best;
}

inline std::vector<SupportedFunction> functions(const GroupPresentation& A, const GroupPresentation& B,
                                                std::size_t max_support = 2) {
  std::vector<GroupElement> values;
  for (auto& a : wreath::all_elements(A))
    if (!a.is_zero()) values.push_back(a);
  const auto pts = window(B);
  std::vector<SupportedFunction> out{SupportedFunction(A, B)};
  auto seen = [&](const SupportedFunction& f) { return std::find(out.begin(), out.end(), f) != out.end(); };
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (const auto& a : values) {
      auto f = canonical(SupportedFunction::delta(a, pts[i]));
      if (!seen(f)) out.push_back(f);
      if (max_support < 2) continue;
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        for (const auto& b : values) {
          auto g = canonical(SupportedFunction::delta(a, pts[i]) + SupportedFunction::delta(b, pts[j]));
          if (!seen(g)) out.push_back(g);
        }
    }
  return out;
}

template <class Visit>
void for_each_instance(Visit visit, std::size_t max_m = 3, Int max_h = 2) {
  for (const auto& A : coefficient_groups())
    for (const auto& B : base_groups()) {
      const auto fns = functions(A, B);
      const std::size_t n = fns.size();
      for (std::size_t m = 1; m <= max_m; ++m) {
        std::vector<std::size_t> idx(m, 0);
        for (;;) {
          std::vector<SupportedFunction> fs;
          for (auto i : idx) fs.push_back(fns[i]);
          for (Int h = 0; h <= max_h; ++h) visit(QspInstance{A, B, fs, h});
          // Non-decreasing index tuples enumerate multisets.
          std::size_t p = m;
          while (p > 0 && idx[p - 1] == n - 1) --p;
          if (p == 0) break;
          ++idx[p - 1];
          for (std::size_t q = p; q < m; ++q) idx[q] = idx[p - 1];
        }
      }
    }
}

}  // namespace family

#pragma once

#include <cstdint>
#include <vector>

#include "wreath/qsp.hpp"
#include "wreath/solvers.hpp"

namespace wreath {

/// 3k positive integers to be split into k triples of equal sum L.
/// The constructor enforces the strict window L/4 < t < L/2, which makes
/// every part of a valid partition a triple.
class ThreePartInstance {
 public:
  explicit ThreePartInstance(std::vector<Int> values);

  const std::vector<Int>& values() const { return values_; }
  Int k() const { return static_cast<Int>(values_.size() / 3); }
  Int target() const { return target_; }

 private:
  std::vector<Int> values_;
  Int target_ = 0;
};

/// Square zero-one matrix; asks for a zero-one x with M x = (1, ..., 1).
class ZoeInstance {
 public:
  explicit ZoeInstance(std::vector<std::vector<Int>> rows);

  std::size_t n() const { return rows_.size(); }
  const std::vector<std::vector<Int>>& rows() const { return rows_; }

 private:
  std::vector<std::vector<Int>> rows_;
};

/// Largest L * k the 3PART generators accept. Instances grow linearly in
/// the values, so this keeps the unary blowup in check.
inline constexpr Int kDefaultUnaryCap = 100'000;

/// c_y is a run of y copies of a along b; c lays k runs of length L one gap
/// apart. The instance is (A, B, (c_{t_1}, ..., c_{t_3k}, -c), 0).
QspInstance gen_3part_h0(const ThreePartInstance& t, const GroupElement& a, const GroupElement& b,
                         Int unary_cap = kDefaultUnaryCap);

/// Same runs in Z over Z^h along the last basis vector, plus weights
/// 2^i M at -b_i and -2^i M at -2 b_i (M = k (L + 1)) that only vanish when
/// b_1..b_{h-1} are quotiented out. Returned with h - 1.
QspInstance gen_3part_midh(const ThreePartInstance& t, Int h, Int unary_cap = kDefaultUnaryCap);

/// Z^n over Z_2: f_i is column i at 0, and the last function is -1_n at 0
/// and 1_n - sum of columns at 1. Returned with h = 0.
QspInstance gen_zoe(const ZoeInstance& m);

/// Exhaustive search for a partition into triples; BudgetExceeded past
/// max_values entries.
Decision solve_3part_bruteforce(const ThreePartInstance& t, std::size_t max_values = 30);

/// Tries all 2^n zero-one vectors; BudgetExceeded past max_n.
Decision solve_zoe_bruteforce(const ZoeInstance& m, std::size_t max_n = 22);

}  // namespace wreath

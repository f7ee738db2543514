#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "wreath/qsp.hpp"

namespace wreath {

enum class Decision { positive, negative, unknown };
enum class Method { trivial, big_h, finite_b, single_f, bounded_m, general };

std::string to_string(Decision d);
std::string to_string(Method m);
/// Accepts the CLI spellings: big-h, finite-b, single-f, bounded-m, general.
std::optional<Method> parse_method(const std::string& s);

struct SolverBudget {
  std::uint64_t max_ball_elements = 10'000'000;
  std::uint64_t max_subgroup_tuples = 100'000;
  std::uint64_t max_delta_tuples = 1'000'000;
  double time_limit_seconds = 60.0;
};

/// Work actually spent, reported alongside every result.
struct BudgetCounters {
  std::uint64_t ball_elements = 0;
  std::uint64_t subgroup_tuples = 0;
  std::uint64_t delta_tuples = 0;
};

struct SolveResult {
  Decision decision = Decision::unknown;
  Method method = Method::general;
  std::optional<Certificate> certificate;  // present iff positive
  BudgetCounters used;
  std::string note;  // why the answer is unknown, or which shortcut decided it
};

/// h >= rank(B): positive iff the values of all f_i sum to 0 in A.
SolveResult solve_big_h(const QspInstance& inst, const SolverBudget& budget = {});

/// |B| finite: Minkowski sums of all shifts, against every subgroup of rank <= h.
SolveResult solve_finite_b(const QspInstance& inst, const SolverBudget& budget = {});

/// One function over torsion-free B: delta_1 = 0 and subsets of at most h
/// support differences, with collapse decided over the rational span.
SolveResult solve_single_f(const QspInstance& inst, const SolverBudget& budget = {});

/// Few functions: every shift tuple in the size(I) ball against every
/// subgroup generated by at most h short vectors.
SolveResult solve_bounded_m(const QspInstance& inst, const SolverBudget& budget = {});

/// Complete search for any instance. Returns unknown once the node budget
/// (max_delta_tuples) or the time limit runs out, never a wrong answer.
SolveResult solve_general(const QspInstance& inst, const SolverBudget& budget = {});

struct DispatchOptions {
  std::size_t bounded_m_limit = 3;  // M: largest |fs| routed to solve_bounded_m
};

/// trivial A -> positive; h >= rank(B) -> big-h; B finite -> finite-B;
/// one function over torsion-free B -> single-f; |fs| <= M -> bounded-m
/// (falling back to general if its budget runs out); otherwise general.
SolveResult dispatch(const QspInstance& inst, const SolverBudget& budget = {}, const DispatchOptions& opts = {});

/// Runs one named method, checking its precondition first
/// (PreconditionViolated on a misroute).
SolveResult solve_with(Method method, const QspInstance& inst, const SolverBudget& budget = {});

}  // namespace wreath

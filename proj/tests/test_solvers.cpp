#include <vector>

#include "doctest.h"
#include "family.hpp"
#include "oracle.hpp"
#include "wreath/errors.hpp"
#include "wreath/hardness.hpp"
#include "wreath/random.hpp"
#include "wreath/solvers.hpp"

using namespace wreath;

namespace {

const auto Z = GroupPresentation::free(1);
const auto Z2 = GroupPresentation::cyclic(2);
const auto ZxZ = GroupPresentation::free(2);

void check_sound(const QspInstance& inst, const SolveResult& r) {
  CHECK(r.certificate.has_value() == (r.decision == Decision::positive));
  if (r.certificate) CHECK(verify_certificate(inst, *r.certificate));
}

Decision run(Method m, const QspInstance& inst) {
  auto r = solve_with(m, inst);
  check_sound(inst, r);
  CHECK(r.method == m);
  return r.decision;
}

}  // namespace

TEST_CASE("method names") {
  CHECK(to_string(Decision::unknown) == "unknown-budget");
  CHECK(to_string(Method::finite_b) == "finite-B");
  CHECK(parse_method("finite-b") == Method::finite_b);
  CHECK(parse_method("bounded-m") == Method::bounded_m);
  CHECK_FALSE(parse_method("auto").has_value());
}

TEST_CASE("big-h") {
  auto B = GroupPresentation(1, {3});
  auto a = Z2.element({1});
  QspInstance pos{Z2, B, {SupportedFunction::power(a, B.zero()), SupportedFunction::power(a, B.element({1, 5}))}, 2};
  CHECK(run(Method::big_h, pos) == Decision::positive);
  QspInstance neg{Z2, B, {SupportedFunction::power(a, B.zero())}, 2};
  CHECK(run(Method::big_h, neg) == Decision::negative);
  QspInstance empty{Z2, B, {SupportedFunction(Z2, B), SupportedFunction(Z2, B)}, 2};
  CHECK(run(Method::big_h, empty) == Decision::positive);
  CHECK_THROWS_AS(solve_big_h(QspInstance{Z2, B, {}, 1}), PreconditionViolated);
}

TEST_CASE("finite-B") {
  auto a = Z2.element({1});
  auto one = Z2.element({1});
  QspInstance same{Z2, Z2, {SupportedFunction::power(a, Z2.zero()), SupportedFunction::power(a, Z2.zero())}, 0};
  CHECK(run(Method::finite_b, same) == Decision::positive);
  QspInstance apart{Z2, Z2, {SupportedFunction::power(a, Z2.zero()), SupportedFunction::power(a, one)}, 0};
  CHECK(run(Method::finite_b, apart) == Decision::positive);
  QspInstance odd{Z2, Z2, {SupportedFunction::power(a, Z2.zero())}, 0};
  CHECK(run(Method::finite_b, odd) == Decision::negative);
  CHECK_THROWS_AS(solve_finite_b(QspInstance{Z2, Z, {}, 0}), PreconditionViolated);

  // a^0 - a^1 needs the collapse of Z_4 onto Z_4 / <1>, a rank-1 subgroup.
  auto Z4 = GroupPresentation::cyclic(4);
  auto x = Z.element({1});
  QspInstance step{Z, Z4, {SupportedFunction::power(x, Z4.zero()) - SupportedFunction::power(x, Z4.element({1}))}, 0};
  CHECK(run(Method::finite_b, step) == Decision::negative);
  step.h = 1;
  CHECK(run(Method::finite_b, step) == Decision::positive);
}

TEST_CASE("single-f") {
  auto a = Z.element({1});
  QspInstance zero{Z, ZxZ, {SupportedFunction(Z, ZxZ)}, 0};
  CHECK(run(Method::single_f, zero) == Decision::positive);
  QspInstance step{Z, ZxZ, {SupportedFunction::power(a, ZxZ.zero()) - SupportedFunction::power(a, ZxZ.element({1, 0}))}, 1};
  CHECK(run(Method::single_f, step) == Decision::positive);
  auto r = solve_single_f(step);
  REQUIRE(r.certificate);
  Subgroup n(ZxZ, r.certificate->subgroup_gens);
  CHECK(contains(n, ZxZ.element({1, 0})));
  CHECK_FALSE(contains(n, ZxZ.element({0, 1})));
  QspInstance off{Z, ZxZ, {SupportedFunction::power(a, ZxZ.zero()) + SupportedFunction::power(a, ZxZ.element({1, 3}))}, 1};
  CHECK(run(Method::single_f, off) == Decision::negative);
  step.h = 0;
  CHECK(run(Method::single_f, step) == Decision::negative);
  CHECK_THROWS_AS(solve_single_f(QspInstance{Z, GroupPresentation(1, {2}), {SupportedFunction(Z, GroupPresentation(1, {2}))}, 0}),
                  PreconditionViolated);
  CHECK_THROWS_AS(solve_single_f(QspInstance{Z, ZxZ, {}, 0}), PreconditionViolated);

  // The collapse is over the rational span: 2 (1,0) lies in <(2,0)> but the
  // saturation <(1,0)> is what a rank-1 N can use, and both identify (0,0)
  // with (2,0).
  QspInstance three{Z, ZxZ,
                    {SupportedFunction::power(a, ZxZ.zero()) + SupportedFunction::power(a, ZxZ.element({-1, 0})) -
                     2 * SupportedFunction::power(a, ZxZ.element({-2, 0}))},
                    1};
  CHECK(run(Method::single_f, three) == Decision::positive);
}

TEST_CASE("bounded-m") {
  auto a = Z.element({1});
  QspInstance one{Z, Z, {SupportedFunction::power(a, Z.zero()) - SupportedFunction::power(a, Z.element({3}))}, 0};
  CHECK(run(Method::bounded_m, one) == Decision::negative);
  QspInstance two{Z, Z, {SupportedFunction::power(a, Z.zero()), SupportedFunction::power(-a, Z.element({3}))}, 0};
  CHECK(run(Method::bounded_m, two) == Decision::positive);
  QspInstance unbalanced{Z, Z, {SupportedFunction::power(a, Z.zero()), SupportedFunction::power(a, Z.element({3}))}, 0};
  CHECK(run(Method::bounded_m, unbalanced) == Decision::negative);
  CHECK_THROWS_AS(solve_bounded_m(QspInstance{Z, Z, {}, 1}), PreconditionViolated);

  // Z^2 with h = 1: the two lamps of a^0 - a^{(1,2)} are identified by <(1,2)>.
  QspInstance diag{Z, ZxZ, {SupportedFunction::power(a, ZxZ.zero()) - SupportedFunction::power(a, ZxZ.element({1, 2})),
                            SupportedFunction(Z, ZxZ)},
                   1};
  CHECK(run(Method::bounded_m, diag) == Decision::positive);
  CHECK(run(Method::general, diag) == Decision::positive);
}

TEST_CASE("general solver examples") {
  CHECK(run(Method::general, QspInstance{Z2, Z, {SupportedFunction(Z2, Z)}, 0}) == Decision::positive);
  auto t = ThreePartInstance({4, 4, 4, 6, 6, 6});
  CHECK(run(Method::general, gen_3part_h0(t, Z2.element({1}), Z.element({1}))) == Decision::negative);
}

TEST_CASE("dispatch routes by the case analysis") {
  auto a = Z.element({1});
  auto trivial = GroupPresentation();
  CHECK(dispatch(QspInstance{trivial, Z, {SupportedFunction(trivial, Z)}, 0}).method == Method::trivial);
  auto Z4 = GroupPresentation::cyclic(4);
  CHECK(dispatch(QspInstance{Z, Z4, {SupportedFunction::power(a, Z4.zero())}, 1}).method == Method::big_h);
  CHECK(dispatch(QspInstance{Z, Z4, {SupportedFunction::power(a, Z4.zero())}, 0}).method == Method::finite_b);
  auto f = SupportedFunction::power(a, ZxZ.zero()) - SupportedFunction::power(a, ZxZ.element({0, 1}));
  CHECK(dispatch(QspInstance{Z, ZxZ, {f}, 1}).method == Method::single_f);
  CHECK(dispatch(QspInstance{Z, ZxZ, {f, f}, 1}).method == Method::bounded_m);
  std::vector<SupportedFunction> four(4, f);
  CHECK(dispatch(QspInstance{Z, ZxZ, four, 1}).method == Method::general);
  auto g = SupportedFunction::power(a, Z.zero()) - SupportedFunction::power(a, Z.element({1}));
  std::vector<SupportedFunction> small(4, g);
  CHECK(dispatch(QspInstance{Z, Z, small, 0}).method == Method::general);
  CHECK(dispatch(QspInstance{Z, Z, small, 0}, {}, DispatchOptions{4}).method == Method::bounded_m);
  // Past its budget bounded-m hands over to the general search.
  auto fallback = dispatch(QspInstance{Z, ZxZ, four, 1}, {}, DispatchOptions{4});
  CHECK(fallback.method == Method::general);
  CHECK_FALSE(fallback.note.empty());
  auto mixed = GroupPresentation(1, {2});
  CHECK(dispatch(QspInstance{Z, mixed, {SupportedFunction(Z, mixed)}, 0}).method != Method::single_f);
}

TEST_CASE("budgets produce unknown, never a wrong answer") {
  SolverBudget tiny;
  tiny.max_delta_tuples = 3;
  auto t = ThreePartInstance({4, 4, 4, 6, 6, 6});
  auto r = solve_general(gen_3part_h0(t, Z2.element({1}), Z.element({1})), tiny);
  CHECK(r.decision == Decision::unknown);
  CHECK_FALSE(r.certificate);
  CHECK_FALSE(r.note.empty());
  CHECK(to_string(r.decision) == "unknown-budget");
}

TEST_CASE("solvers agree with each other and with the oracle on the tiny family (sampled)") {
  std::size_t seen = 0, checked = 0;
  family::for_each_instance([&](const QspInstance& inst) {
    if (seen++ % 23 != 0) return;
    ++checked;
    auto want = oracle::solve(inst, 9).has_value() ? Decision::positive : Decision::negative;
    auto gen = solve_general(inst);
    check_sound(inst, gen);
    REQUIRE(gen.decision == want);
    if (inst.h >= group_rank(inst.B)) CHECK(solve_big_h(inst).decision == want);
    else CHECK(solve_bounded_m(inst).decision == want);
    if (inst.B.is_finite()) CHECK(solve_finite_b(inst).decision == want);
    if (inst.fs.size() == 1 && !inst.B.is_finite()) CHECK(solve_single_f(inst).decision == want);
    auto d = dispatch(inst);
    check_sound(inst, d);
    CHECK(d.decision == want);
  });
  CHECK(checked > 500);
}

TEST_CASE("monotone in h, deterministic, and the total-sum filter is sound") {
  Rng rng(31);
  auto B = GroupPresentation(1, {2});
  auto A = GroupPresentation::cyclic(3);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<SupportedFunction> fs;
    const std::size_t m = 1 + rng.below(3);
    for (std::size_t i = 0; i < m; ++i) {
      SupportedFunction f(A, B);
      for (std::size_t k = rng.below(3); k > 0; --k)
        f += SupportedFunction::delta(A.element({rng.range(1, 2)}), B.element({rng.range(0, 1), rng.range(-2, 2)}));
      fs.push_back(f);
    }
    Decision prev = Decision::negative;
    for (Int h = 0; h <= 2; ++h) {
      QspInstance inst{A, B, fs, h};
      auto r = solve_general(inst);
      REQUIRE(r.decision != Decision::unknown);
      check_sound(inst, r);
      if (prev == Decision::positive) CHECK(r.decision == Decision::positive);
      prev = r.decision;
      auto again = solve_general(inst);
      CHECK(again.decision == r.decision);
      CHECK(again.certificate == r.certificate);
      auto d = dispatch(inst);
      CHECK(d.decision == r.decision);
      GroupElement total = A.zero();
      for (const auto& f : fs) total += total_sum(f);
      if (!total.is_zero()) CHECK(r.decision == Decision::negative);
    }
  }
}

#include <vector>

#include "doctest.h"
#include "wreath/errors.hpp"
#include "wreath/hardness.hpp"
#include "wreath/solvers.hpp"

using namespace wreath;

namespace {

const GroupPresentation Z = GroupPresentation::free(1);
const GroupPresentation Z2 = GroupPresentation::cyclic(2);

QspInstance h0(std::vector<Int> values) {
  return gen_3part_h0(ThreePartInstance(std::move(values)), Z2.element({1}), Z.element({1}));
}

// Positions of the lamps of f over Z, in order.
std::vector<Int> lamp_positions(const SupportedFunction& f) {
  std::vector<Int> out;
  for (const auto& t : f.terms()) out.push_back(t.point[0]);
  return out;
}

Decision decide(const QspInstance& inst) {
  auto r = dispatch(inst);
  if (r.decision == Decision::positive) CHECK(verify_certificate(inst, *r.certificate));
  return r.decision;
}

}  // namespace

TEST_CASE("3PART instances validate the window") {
  CHECK(ThreePartInstance({1, 1, 1}).target() == 3);
  CHECK(ThreePartInstance({4, 4, 4, 6, 6, 6}).target() == 15);
  CHECK(ThreePartInstance({4, 4, 4, 6, 6, 6}).k() == 2);
  CHECK_THROWS_AS(ThreePartInstance({1, 2}), PreconditionViolated);
  CHECK_THROWS_AS(ThreePartInstance({}), PreconditionViolated);
  CHECK_THROWS_AS(ThreePartInstance({0, 1, 2}), PreconditionViolated);
  CHECK_THROWS_AS(ThreePartInstance({1, 1, 2}), PreconditionViolated);  // L = 4, 2 is not below L/2
  CHECK_THROWS_AS(ThreePartInstance({1, 2, 3, 4, 5, 6}), PreconditionViolated);
  CHECK_THROWS_AS(ThreePartInstance({3, 3, 3, 3, 3, 4}), PreconditionViolated);  // sum 19 not divisible by 2
}

TEST_CASE("ZOE instances are square zero-one matrices") {
  CHECK(ZoeInstance({{1, 0}, {0, 1}}).n() == 2);
  CHECK_THROWS_AS(ZoeInstance(std::vector<std::vector<Int>>{{1, 0}}), PreconditionViolated);
  CHECK_THROWS_AS(ZoeInstance(std::vector<std::vector<Int>>{{2}}), PreconditionViolated);
}

TEST_CASE("3PART brute force") {
  CHECK(solve_3part_bruteforce(ThreePartInstance({1, 1, 1})) == Decision::positive);
  CHECK(solve_3part_bruteforce(ThreePartInstance({4, 4, 4, 6, 6, 6})) == Decision::negative);
  CHECK(solve_3part_bruteforce(ThreePartInstance({5, 5, 5, 5, 5, 5})) == Decision::positive);
  CHECK(solve_3part_bruteforce(ThreePartInstance({4, 5, 6, 4, 5, 6})) == Decision::positive);
  CHECK(solve_3part_bruteforce(ThreePartInstance({4, 4, 4, 4, 4, 6, 6, 6, 7})) == Decision::negative);
  CHECK_THROWS_AS(solve_3part_bruteforce(ThreePartInstance({1, 1, 1}), 2), BudgetExceeded);
}

TEST_CASE("ZOE brute force") {
  CHECK(solve_zoe_bruteforce(ZoeInstance({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})) == Decision::positive);
  CHECK(solve_zoe_bruteforce(ZoeInstance({{1, 1}, {0, 0}})) == Decision::negative);
  CHECK(solve_zoe_bruteforce(ZoeInstance({{1, 1}, {1, 1}})) == Decision::positive);
  CHECK(solve_zoe_bruteforce(ZoeInstance({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}})) == Decision::negative);
}

TEST_CASE("runs are laid out one unlit lamp apart") {
  auto inst = h0({4, 4, 4, 6, 6, 6});
  REQUIRE(inst.fs.size() == 7);
  CHECK(inst.h == 0);
  CHECK(lamp_positions(inst.fs[0]) == std::vector<Int>{0, 1, 2, 3});
  CHECK(lamp_positions(inst.fs[3]) == std::vector<Int>{0, 1, 2, 3, 4, 5});
  std::vector<Int> expected;
  for (Int i = 0; i < 15; ++i) expected.push_back(i);
  for (Int i = 16; i < 31; ++i) expected.push_back(i);
  CHECK(lamp_positions(inst.fs[6]) == expected);
  // -c in Z_2 is c itself.
  for (const auto& t : inst.fs[6].terms()) CHECK(t.coeff == Z2.element({1}));

  // A direction other than the generator scales the layout.
  auto z2 = GroupPresentation::free(2);
  auto wide = gen_3part_h0(ThreePartInstance({1, 1, 1}), Z.element({1}), z2.element({0, 2}));
  CHECK(wide.fs[3].at(z2.element({0, 4})) == Z.element({-1}));
  CHECK(wide.fs[3].support_size() == 3);
}

TEST_CASE("3PART generator rejects bad parameters") {
  ThreePartInstance t({1, 1, 1});
  CHECK_THROWS_AS(gen_3part_h0(t, Z2.zero(), Z.element({1})), PreconditionViolated);
  auto mixed = GroupPresentation(1, {2});
  CHECK_THROWS_AS(gen_3part_h0(t, Z2.element({1}), mixed.element({1, 0})), PreconditionViolated);
  CHECK_NOTHROW(gen_3part_h0(t, Z2.element({1}), mixed.element({1, 1})));
  CHECK_THROWS_AS(gen_3part_h0(ThreePartInstance({5, 5, 5, 5, 5, 5}), Z2.element({1}), Z.element({1}), 20),
                  PreconditionViolated);
  CHECK_THROWS_AS(gen_3part_midh(t, 0), PreconditionViolated);
}

TEST_CASE("3PART reduction decides like the source problem") {
  CHECK(decide(h0({1, 1, 1})) == Decision::positive);
  CHECK(decide(h0({4, 4, 4, 6, 6, 6})) == Decision::negative);
  CHECK(decide(h0({5, 5, 5, 5, 5, 5})) == Decision::positive);
  CHECK(decide(h0({4, 5, 6, 4, 5, 6})) == Decision::positive);
}

TEST_CASE("mid-h generator") {
  ThreePartInstance t({1, 1, 1});
  auto one = gen_3part_midh(t, 1);
  CHECK(one.h == 0);
  CHECK(one.fs == gen_3part_h0(t, Z.element({1}), Z.element({1})).fs);

  auto two = gen_3part_midh(t, 2);
  CHECK(two.h == 1);
  CHECK(two.B == GroupPresentation::free(2));
  // M = k (L + 1) = 4, and the i = 1 sentinel weighs 2 M.
  const auto& c = two.fs.back();
  CHECK(c.at(two.B.element({-1, 0})) == Z.element({-8}));
  CHECK(c.at(two.B.element({-2, 0})) == Z.element({8}));
  CHECK(c.at(two.B.element({0, 2})) == Z.element({-1}));
  CHECK(c.support_size() == 5);

  auto three = gen_3part_midh(ThreePartInstance({4, 4, 4, 6, 6, 6}), 3);
  CHECK(three.fs.back().at(three.B.element({0, -2, 0})) == Z.element({4 * 32}));
}

TEST_CASE("mid-h decisions and sentinel soundness") {
  for (auto values : {std::vector<Int>{1, 1, 1}, std::vector<Int>{4, 4, 4, 6, 6, 6}}) {
    ThreePartInstance t(values);
    CHECK(decide(gen_3part_midh(t, 1)) == solve_3part_bruteforce(t));
    auto inst = gen_3part_midh(t, 2);
    auto r = dispatch(inst);
    CHECK(r.decision == solve_3part_bruteforce(t));
    if (r.decision == Decision::positive) {
      REQUIRE(r.certificate);
      CHECK(verify_certificate(inst, *r.certificate));
      Subgroup n(inst.B, r.certificate->subgroup_gens);
      CHECK(contains(n, inst.B.generator(0)));
      CHECK_FALSE(contains(n, inst.B.generator(1)));
    }
  }
}

TEST_CASE("ZOE reduction") {
  auto id = gen_zoe(ZoeInstance({{1, 0}, {0, 1}}));
  CHECK(id.A == GroupPresentation::free(2));
  CHECK(id.B == Z2);
  CHECK(id.h == 0);
  REQUIRE(id.fs.size() == 3);
  CHECK(id.fs[0] == SupportedFunction::delta(id.A.element({1, 0}), Z2.zero()));
  CHECK(id.fs[2].at(Z2.zero()) == id.A.element({-1, -1}));
  CHECK(id.fs[2].at(Z2.element({1})).is_zero());
  CHECK(decide(id) == Decision::positive);
  CHECK(decide(gen_zoe(ZoeInstance({{1, 1}, {0, 0}}))) == Decision::negative);
  CHECK(decide(gen_zoe(ZoeInstance({{1, 1}, {1, 1}}))) == Decision::positive);
  CHECK(decide(gen_zoe(ZoeInstance({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}))) == Decision::negative);
}

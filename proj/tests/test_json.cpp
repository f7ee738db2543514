#include <string>

#include "doctest.h"
#include "solved.hpp"
#include "wreath/errors.hpp"
#include "wreath/json_codec.hpp"

using namespace wreath;
using io::Json;

TEST_CASE("integers") {
  CHECK(io::to_json(Int{5}).is_number());
  CHECK(io::to_json(Int{1} << 53).is_number());
  CHECK(io::to_json((Int{1} << 53) + 1) == Json("9007199254740993"));
  CHECK(io::to_json(-(Int{1} << 53) - 1) == Json("-9007199254740993"));
  CHECK(io::int_from_json(Json("-12"), "/x") == -12);
  CHECK(io::int_from_json(Json(7), "/x") == 7);
  CHECK(io::int_from_json(Json("9223372036854775807"), "/x") == INT64_MAX);
  CHECK_THROWS_AS(io::int_from_json(Json("9223372036854775808"), "/x"), io::FormatError);
  CHECK_THROWS_AS(io::int_from_json(Json(18446744073709551615ULL), "/x"), io::FormatError);
  CHECK_THROWS_AS(io::int_from_json(Json(1.5), "/x"), io::FormatError);
  CHECK_THROWS_AS(io::int_from_json(Json("12a"), "/x"), io::FormatError);
  CHECK_THROWS_AS(io::int_from_json(Json(""), "/x"), io::FormatError);
  CHECK_THROWS_AS(io::int_from_json(Json(true), "/x"), io::FormatError);
}

TEST_CASE("groups and elements") {
  auto g = GroupPresentation(1, {2, 4});
  auto j = io::to_json(g);
  CHECK(io::dump(j) == "{\n  \"free_rank\": 1,\n  \"torsion\": [2, 4]\n}\n");
  CHECK(io::group_from_json(j, "") == g);
  CHECK_THROWS_AS(io::group_from_json(io::parse_text(R"({"free_rank": 0, "torsion": [2, 3]})"), ""),
                  PreconditionViolated);
  CHECK_THROWS_AS(io::group_from_json(io::parse_text(R"({"free_rank": -1, "torsion": []})"), ""), io::FormatError);
  CHECK_THROWS_AS(io::group_from_json(io::parse_text(R"({"free_rank": 0, "torsion": [], "x": 1})"), ""),
                  io::FormatError);
  auto e = g.element({1, 7, -3});
  CHECK(io::to_json(e) == io::parse_text("[1, 3, -3]"));
  CHECK(io::element_from_json(io::parse_text("[3, 7, -3]"), g, "") == e);
  CHECK_THROWS_AS(io::element_from_json(io::parse_text("[1, 2]"), g, ""), PreconditionViolated);
}

TEST_CASE("syntax errors carry a position") {
  try {
    io::parse_text("{\n  \"a\": [1,\n  2,,\n}");
    FAIL("no error");
  } catch (const io::FormatError& e) {
    std::string msg = e.what();
    CHECK(msg.rfind("line 3, column 5", 0) == 0);
  }
  try {
    io::instance_from_json(io::parse_text(R"({"A": {"free_rank": 0, "torsion": [2]}, "B": 3, "h": 0, "fs": []})"));
    FAIL("no error");
  } catch (const io::FormatError& e) {
    CHECK(std::string(e.what()).rfind("/B:", 0) == 0);
  }
}

TEST_CASE("documents round trip") {
  Rng rng(4);
  for (int t = 0; t < 100; ++t) {
    auto s = solved::random_solved(rng);
    io::InstanceDoc doc{s.inst, std::nullopt};
    if (t % 2) doc.provenance = Json{{"generator", "test"}, {"n", t}};
    auto text = io::dump(io::to_json(doc));
    auto back = io::instance_from_json(io::parse_text(text));
    CHECK(back.instance.A == s.inst.A);
    CHECK(back.instance.B == s.inst.B);
    CHECK(back.instance.h == s.inst.h);
    CHECK(back.instance.fs == s.inst.fs);
    CHECK(back.provenance == doc.provenance);
    CHECK(io::dump(io::to_json(back)) == text);

    Certificate c{s.deltas, s.gens};
    auto cj = io::parse_text(io::dump(io::to_json(c)));
    CHECK(io::certificate_from_json(cj, s.inst.B) == c);
  }
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SolvableParams p;
    auto g = gen_solvable(seed, GroupPresentation::cyclic(3), GroupPresentation(1, {2}), p);
    io::EquationDoc doc{g.equation, g.assignment, std::nullopt};
    auto text = io::dump(io::to_json(doc));
    auto back = io::equation_from_json(io::parse_text(text));
    CHECK(back.equation.constants == g.equation.constants);
    CHECK(back.equation.genus == g.equation.genus);
    REQUIRE(back.assignment);
    CHECK(back.assignment->zs == g.assignment.zs);
    CHECK(io::dump(io::to_json(back)) == text);
  }
}

TEST_CASE("schema checks") {
  const std::string base = R"({"kind": "qsp-instance", "A": {"free_rank": 0, "torsion": [2]}, "B": {"free_rank": 1, "torsion": []}, "h": 0, )";
  CHECK_NOTHROW(io::instance_from_json(io::parse_text(base + R"("fs": []})")));
  CHECK_THROWS_AS(io::instance_from_json(io::parse_text(base + R"("fs": [{"terms": [{"point": [0]}]}]})")),
                  io::FormatError);
  CHECK_THROWS_AS(io::instance_from_json(io::parse_text(base + R"("fs": [{"terms": [{"point": [0, 1], "coeff": [1]}]}]})")),
                  PreconditionViolated);
  CHECK_THROWS_AS(io::instance_from_json(io::parse_text(base + R"("fs": {}})")), io::FormatError);
  auto wrong_kind = io::parse_text(base + R"("fs": []})");
  wrong_kind["kind"] = "equation";
  CHECK_THROWS_AS(io::instance_from_json(wrong_kind), io::FormatError);
  auto negative_h = io::parse_text(base + R"("fs": []})");
  negative_h["h"] = -1;
  CHECK_THROWS_AS(io::instance_from_json(negative_h), PreconditionViolated);
  // Duplicate points are summed on input.
  auto dup = io::instance_from_json(io::parse_text(
      base + R"("fs": [{"terms": [{"point": [0], "coeff": [1]}, {"point": [0], "coeff": [1]}]}]})"));
  CHECK(dup.instance.fs[0].is_zero());
}

TEST_CASE("fnv1a64") {
  CHECK(io::fnv1a64("") == "cbf29ce484222325");
  CHECK(io::fnv1a64("a") == "af63dc4c8601ec8c");
  CHECK(io::fnv1a64("foobar") == "85944171f73967e8");
}

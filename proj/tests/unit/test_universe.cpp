#include <doctest.h>

#include "../support/files.hpp"
#include "qcf/error.hpp"
#include "qcf/syntax.hpp"
#include "qcf/universe.hpp"

using namespace qcf;
using namespace qcf::testing;

namespace {

UniverseSpec elevator_spec(std::size_t window, std::size_t max_prefix) {
  UniverseSpec spec;
  spec.universe = parse_plain_formula(strip_comments(data_file("elevator.ltl")));
  spec.reference = parse_lasso("|{b,u}{m,d}");
  spec.mutable_props = {"u", "d"};
  spec.window = window;
  spec.shapes = {max_prefix, {2}};
  return spec;
}

bool contains_word(const EvaluationContext& ctx, const LassoTrace& t) {
  for (std::size_t w = 0; w < ctx.size(); ++w)
    if (ctx.world(w).same_word(t.with_alphabet(ctx.world(w).alphabet()))) return true;
  return false;
}

}  // namespace

TEST_CASE("edit enumeration counts") {
  CHECK(enumerate_edits(elevator_spec(1, 1)).size() == 4);
  UniverseSpec spec = elevator_spec(2, 2);
  spec.mutable_props = {"u"};
  CHECK(enumerate_edits(spec).size() == 4);
  spec.window = 0;
  CHECK_THROWS_AS(enumerate_edits(spec), Error);
  spec = elevator_spec(1, 1);
  spec.mutable_props.clear();
  CHECK_THROWS_AS(enumerate_edits(spec), Error);
  spec = elevator_spec(12, 12);
  spec.candidate_cap = 1000;
  CHECK_THROWS_AS(enumerate_edits(spec), CapExceeded);
}

TEST_CASE("completion derives the floors from the actions") {
  UniverseSpec spec = elevator_spec(2, 2);
  const auto worlds = complete_candidates(spec, enumerate_edits(spec));
  // d,u then the reference's u,d: bottom, bottom, middle, top, middle, ...
  CHECK(std::any_of(worlds.begin(), worlds.end(), [](const LassoTrace& t) {
    return t.same_word(parse_lasso("{b,d}{b,u}|{m,u}{top,d}", t.alphabet()));
  }));
  // u,u would reach the top floor, but the loop then needs top and middle at once.
  CHECK_FALSE(std::any_of(worlds.begin(), worlds.end(), [](const LassoTrace& t) {
    const auto u = t.alphabet().index("u");
    return t.holds(*u, 0) && t.holds(*u, 1);
  }));
  for (const auto& t : worlds) CHECK(eval_ltl_at(t, spec.universe));

  spec.universe = make_false();
  CHECK(complete_candidates(spec, enumerate_edits(spec)).empty());
  CHECK_THROWS_AS(build_context(spec), Error);
}

TEST_CASE("trivial universe formula leaves the edits as they are") {
  UniverseSpec spec;
  spec.universe = make_true();
  spec.reference = parse_lasso("|{a}");
  spec.mutable_props = {"a"};
  spec.window = 2;
  spec.shapes = {2, {1}};
  const auto partials = enumerate_edits(spec);
  const auto worlds = complete_candidates(spec, partials);
  CHECK(partials.size() == 4);
  CHECK(worlds.size() == 4);
  const EvaluationContext ctx = build_context(spec);
  CHECK(ctx.size() == 4);
  CHECK(ctx.order().leq(0, 3));
}

TEST_CASE("reference-only universe") {
  UniverseSpec spec;
  spec.universe = parse_plain_formula("G a");
  spec.reference = parse_lasso("|{a}");
  spec.mutable_props = {"a"};
  spec.window = 1;
  spec.shapes = {1, {1}};
  const EvaluationContext ctx = build_context(spec);
  CHECK(ctx.size() == 1);
  CHECK(ctx.universe().count() == 1);
}

TEST_CASE("elevator universe at the acceptance bound") {
  const EvaluationContext ctx = build_context(elevator_spec(6, 6));
  CHECK(contains_word(ctx, parse_lasso("{b,u}{m,d}{b,u}{m,u}{top,d}{m,d}|{b,u}{m,d}")));
  CHECK(contains_word(ctx, parse_lasso("{b,u}{m,u}{top,d}{m,d}|{b,u}{m,d}")));
  CHECK(ctx.reference() == 0);
  CHECK(ctx.world(0).same_word(parse_lasso("|{b,u}{m,d}", ctx.world(0).alphabet())));
  const Formula uni = elevator_spec(6, 6).universe;
  for (std::size_t w = 0; w < ctx.size(); ++w) {
    CHECK(eval_ltl_at(ctx.world(w), uni));
    CHECK(ctx.order().leq(0, w));
    if (w != 0) CHECK_FALSE(ctx.order().leq(w, 0));
  }
  // Larger bounds only add worlds.
  const EvaluationContext small = build_context(elevator_spec(4, 6));
  for (std::size_t w = 0; w < small.size(); ++w) CHECK(contains_word(ctx, small.world(w)));
  CHECK(small.size() < ctx.size());
}

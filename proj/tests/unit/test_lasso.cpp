#include <doctest.h>

#include <numeric>
#include <random>

#include "../support/gen.hpp"
#include "qcf/error.hpp"
#include "qcf/lasso.hpp"
#include "qcf/preorder.hpp"

using namespace qcf;
using namespace qcf::testing;

namespace {

// Containment of difference sets over the first n positions, per proposition.
bool sampled_leq(const LassoTrace& r, const LassoTrace& a, const LassoTrace& b, Letter x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if ((r.at(i) ^ a.at(i)) & ~(r.at(i) ^ b.at(i)) & x) return false;
  return true;
}

}  // namespace

TEST_CASE("lasso syntax and canonical form") {
  const LassoTrace t = parse_lasso("{b,u}{m,d}|{b,u}{m,d}");
  CHECK(t.prefix_length() == 2);
  CHECK_FALSE(t.is_canonical());
  const LassoTrace c = t.canonical();
  CHECK(c.prefix_length() == 0);
  CHECK(c.loop_length() == 2);
  CHECK(c.same_word(t));
  CHECK(render_lasso(parse_lasso("{a}|{a,b}{}", Alphabet({"a", "b"}))) == "{a}|{a,b}{}");

  CHECK(parse_lasso("|{a}{a}{a}").canonical().loop_length() == 1);
  CHECK(parse_lasso("{x}{a}|{b}{a}").canonical().prefix_length() == 1);
  CHECK(parse_lasso("{x}{a}|{b}{a}").canonical().same_word(parse_lasso("{x}{a}|{b}{a}")));

  CHECK_THROWS_AS(parse_lasso("{a}|"), SyntaxError);
  CHECK_THROWS_AS(parse_lasso("{a"), SyntaxError);
  CHECK_THROWS_AS(parse_lasso("{a}|{b}|{a}"), SyntaxError);
  CHECK(parse_lasso("{a}{b}").loop_length() == 2);
  CHECK(parse_lasso("{a}{b}").prefix_length() == 0);
}

TEST_CASE("canonical forms are unique per word") {
  std::mt19937_64 rng(23);
  const Alphabet ab({"a", "b"});
  for (int i = 0; i < 300; ++i) {
    const LassoTrace t = random_lasso(rng, ab, 3, 4);
    const LassoTrace c = t.canonical();
    CHECK(c.is_canonical());
    CHECK(c.same_word(t));
    for (std::size_t n = 0; n < 40; ++n) CHECK(c.at(n) == t.at(n));
    const LassoTrace bigger = t.reshaped(t.prefix_length() + 2, t.loop_length() * 3);
    CHECK(bigger.canonical() == c);
  }
}

TEST_CASE("alignment") {
  const Alphabet ab({"a"});
  const LassoTrace t1 = parse_lasso("{a}{}|{a}{}", ab), t2 = parse_lasso("|{a}", ab);
  Alignment al = align_lassos({t1, t2});
  CHECK(al.prefix == 2);
  CHECK(al.loop == 2);

  al = align_lassos({parse_lasso("|{a}{}", ab), parse_lasso("|{a}{}{}", ab)});
  CHECK(al.loop == 6);

  std::mt19937_64 rng(29);
  for (int i = 0; i < 100; ++i) {
    std::vector<LassoTrace> ts;
    for (int k = 0; k < 3; ++k) ts.push_back(random_lasso(rng, ab, 3, 4));
    al = align_lassos(ts);
    std::size_t p = 0, l = 1;
    for (const auto& t : ts) p = std::max(p, t.prefix_length()), l = std::lcm(l, t.loop_length());
    CHECK(al.prefix == p);
    CHECK(al.loop == l);
    for (std::size_t k = 0; k < ts.size(); ++k) {
      CHECK(al.traces[k].prefix_length() == p);
      CHECK(al.traces[k].loop_length() == l);
      for (std::size_t n = 0; n < p + 2 * l; ++n) CHECK(al.traces[k].at(n) == ts[k].at(n));
    }
  }
}

TEST_CASE("change-subset similarity examples") {
  const Alphabet ab({"b", "d", "m", "u"});
  const LassoTrace t = parse_lasso("{b,u}{m,d}|{b,u}{m,d}", ab);
  const LassoTrace t1 = parse_lasso("|{b,d}", ab);
  const LassoTrace t2 = parse_lasso("{b,d}{b,d}|{b,u}{m,d}", ab);
  const std::vector<std::string> x = {"u", "d"};
  CHECK(subset_similarity(t, t2, t1, x));
  CHECK_FALSE(subset_similarity(t, t1, t2, x));
  CHECK(subset_similarity(t, t1, t1, x));
  CHECK(subset_similarity(t, t, t1, x));

  const Alphabet u({"u"});
  const LassoTrace r = parse_lasso("|{}", u);
  const LassoTrace at0 = parse_lasso("{u}|{}", u), at1 = parse_lasso("{}{u}|{}", u);
  CHECK_FALSE(subset_similarity(r, at0, at1, {"u"}));
  CHECK_FALSE(subset_similarity(r, at1, at0, {"u"}));

  CHECK_THROWS(subset_similarity(t, t1, parse_lasso("|{b}", Alphabet({"b"})), x));
}

TEST_CASE("similarity matches a 1000-position sampling oracle") {
  std::mt19937_64 rng(31);
  const Alphabet ab({"a", "b", "c"});
  const std::vector<std::string> x = {"a", "c"};
  const Letter xm = ab.mask(x);
  for (int i = 0; i < 400; ++i) {
    const LassoTrace r = random_lasso(rng, ab, 3, 3);
    const LassoTrace a = random_lasso(rng, ab, 3, 4);
    const LassoTrace b = random_lasso(rng, ab, 3, 4);
    CHECK(subset_similarity(r, a, b, x) == sampled_leq(r, a, b, xm, 1000));
    CHECK(subset_similarity(r, a, a, x));
    CHECK(subset_similarity(r, r, b, x));
    const LassoTrace c = random_lasso(rng, ab, 3, 4);
    if (subset_similarity(r, a, b, x) && subset_similarity(r, b, c, x)) CHECK(subset_similarity(r, a, c, x));
  }
}

TEST_CASE("preorder closure") {
  const std::vector<std::string> worlds = {"r", "a", "b"};
  Preorder chain = closure_preorder(std::vector<std::pair<std::string, std::string>>{{"a", "b"}}, worlds, "r");
  CHECK(chain.leq(0, 2));
  CHECK(chain.leq(1, 2));
  CHECK_FALSE(chain.leq(2, 1));
  CHECK(chain.leq(1, 1));
  CHECK(chain.is_total());

  Preorder fork = closure_preorder(std::vector<std::pair<std::string, std::string>>{}, worlds, "r");
  CHECK(fork.leq(0, 1));
  CHECK(fork.leq(0, 2));
  CHECK_FALSE(fork.leq(1, 2));
  CHECK_FALSE(fork.leq(2, 1));
  CHECK_FALSE(fork.is_total());

  CHECK_THROWS_AS(closure_preorder(std::vector<std::pair<std::string, std::string>>{{"a", "r"}}, worlds, "r"),
                  ModelError);
  CHECK_THROWS_AS(closure_preorder(std::vector<std::pair<std::string, std::string>>{{"a", "z"}}, worlds, "r"),
                  Error);
  // a and r tie under the least policy.
  Preorder least = closure_preorder(std::vector<std::pair<std::size_t, std::size_t>>{{1, 0}}, 3, 0,
                                    MinimumPolicy::Least);
  CHECK(least.leq(1, 0));
  CHECK(least.leq(1, 2));
}

#include <doctest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "syncmat/automaton.hpp"
#include "syncmat/harness.hpp"

using namespace syncmat;

TEST_CASE("validation accepts the reference automata") {
  Dfa cerny = build_cerny(4);
  CHECK(validate(cerny).strongly_connected);
  CHECK(validate(build_kari()).strongly_connected);
  CHECK(validate(build_roman()).strongly_connected);
}

TEST_CASE("single-state automaton is valid and strongly connected") {
  Dfa d(1, "a", {{1}});
  CHECK(validate(d).strongly_connected);
  CHECK(is_synchronizing(d));
  CHECK(shortest_sync_word(d)->empty());
}

TEST_CASE("construction rejects structural violations") {
  CHECK_THROWS(Dfa(2, "aa", {{1, 2}, {1, 2}}));       // duplicate letter
  CHECK_THROWS(Dfa(2, "ab", {{1, 2}}));               // missing letter row
  CHECK_THROWS(Dfa(2, "ab", {{1, 2}, {1}}));          // short state row
  CHECK_THROWS(Dfa(2, "ab", {{1, 2}, {1, 3}}));       // image out of range
  CHECK_THROWS(Dfa(0, "a", {}));                      // no states
}

TEST_CASE("parser reports incomplete tables") {
  CHECK_THROWS_WITH_AS(
      parse_dfa("dfa 2 1\nletters a\nstate 1: 2\n"),
      doctest::Contains("incomplete"), std::runtime_error);
  CHECK_THROWS(parse_dfa("dfa 2 1\nletters a\nstate 1: 2\nstate 1: 1\n"));
  CHECK_THROWS(parse_dfa("dfa 2 2\nletters a b\nstate 1: 1\nstate 2: 2 1\n"));
}

TEST_CASE("apply reproduces the reference single-letter images") {
  Dfa kari = build_kari();
  CHECK(apply(kari, StateSet::full(6), Word("b")).to_string() == "111110");
  Dfa roman = build_roman();
  CHECK(apply(roman, StateSet::full(5), Word("abca")).to_string() == "10110");
}

TEST_CASE("empty word is the identity for apply") {
  Dfa kari = build_kari();
  StateSet s = StateSet::of(6, {2, 4, 5});
  CHECK(apply(kari, s, Word{}) == s);
}

TEST_CASE("apply rejects foreign letters and wrong universes") {
  Dfa cerny = build_cerny(4);
  CHECK_THROWS(apply(cerny, StateSet::full(4), Word("abz")));
  CHECK_THROWS(apply(cerny, StateSet::full(5), Word("a")));
}

TEST_CASE("synchronizability of the reference automata") {
  CHECK(is_synchronizing(build_cerny(4)));
  CHECK(is_synchronizing(build_kari()));
  Dfa identity_only(2, "a", {{1, 2}});
  CHECK_FALSE(is_synchronizing(identity_only));
  CHECK_FALSE(shortest_sync_word(identity_only).has_value());
}

TEST_CASE("shortest reset words of the reference automata") {
  auto c = shortest_sync_word(build_cerny(4));
  REQUIRE(c.has_value());
  CHECK(c->str() == "baaabaaab");
  CHECK(c->length() == 9);

  auto k = shortest_sync_word(build_kari());
  REQUIRE(k.has_value());
  CHECK(k->length() == 25);
  CHECK(k->str() == "baabababaabbabaabaababaab");

  auto r = shortest_sync_word(build_roman());
  REQUIRE(r.has_value());
  CHECK(r->length() == 16);
  CHECK(r->str() == "abcacacbcaacabca");
}

TEST_CASE("subset search cap is enforced") {
  const int n = kSubsetSearchMaxStates + 1;
  std::vector<State> a(n), b(n);
  for (State s = 1; s <= n; ++s) {
    a[s - 1] = s % n + 1;
    b[s - 1] = (s == 1) ? 2 : s;
  }
  Dfa big(n, "ab", {a, b});
  CHECK_THROWS_AS((void)shortest_sync_word(big), std::invalid_argument);
}

TEST_CASE("greedy reset words synchronize and are frozen") {
  Dfa cerny = build_cerny(4);
  Word g = greedy_sync_word(cerny);
  CHECK(apply(cerny, StateSet::full(4), g).count() == 1);
  CHECK(g.length() == 10);  // >= exact optimum 9

  Dfa kari = build_kari();
  Word gk = greedy_sync_word(kari);
  CHECK(apply(kari, StateSet::full(6), gk).count() == 1);
  CHECK(gk.length() == 26);
  CHECK(gk.length() <= (6 * 6 * 6 - 6) / 6);  // cubic target: 35

  Dfa single(1, "a", {{1}});
  CHECK(greedy_sync_word(single).empty());
  CHECK_THROWS(greedy_sync_word(Dfa(2, "a", {{1, 2}})));
}

TEST_CASE("search agrees with the set-based oracle on random automata") {
  gen::Rng rng(2024);
  for (int round = 0; round < 200; ++round) {
    Dfa d = gen::random_dfa(rng, rng.uniform(2, 6), rng.uniform(1, 3));
    auto fast = shortest_sync_word(d);
    auto slow = oracle::shortest_reset_word(d);
    REQUIRE(fast.has_value() == slow.has_value());
    if (fast) {
      CHECK(fast->length() == slow->length());
      CHECK(apply(d, StateSet::full(d.state_count()), *fast).count() == 1);
      CHECK(is_synchronizing(d));
      Word g = greedy_sync_word(d);
      CHECK(g.length() >= fast->length());
      CHECK(apply(d, StateSet::full(d.state_count()), g).count() == 1);
    } else {
      CHECK_FALSE(is_synchronizing(d));
    }
  }
}

TEST_CASE("random synchronizing two-letter automata respect both bounds") {
  gen::Rng rng(909);
  int usable = 0;
  for (int round = 0; round < 2000; ++round) {
    const int n = rng.uniform(2, 6);
    Dfa d = gen::random_dfa(rng, n, 2);
    if (!is_strongly_connected(d)) continue;
    auto w = shortest_sync_word(d);
    if (!w) continue;
    ++usable;
    CHECK(w->length() <= (n - 1) * (n - 1));
    CHECK(w->length() <= (n * n * n - n) / 6);
  }
  CHECK(usable > 200);
}

TEST_CASE("image composition and monotonicity") {
  gen::Rng rng(77);
  for (int round = 0; round < 300; ++round) {
    Dfa d = gen::random_dfa(rng, rng.uniform(2, 7), rng.uniform(1, 3));
    const int n = d.state_count();
    Word u = gen::random_word(rng, d, 6);
    Word v = gen::random_word(rng, d, 6);
    StateSet s(n), t(n);
    for (State st = 1; st <= n; ++st) {
      if (rng.uniform(0, 1)) s.insert(st);
      if (rng.uniform(0, 2)) t.insert(st);
    }
    StateSet both = s.union_with(t);
    CHECK(apply(d, apply(d, s, u), v) == apply(d, s, u + v));
    CHECK(apply(d, s, u).subset_of(apply(d, both, u)));
    CHECK(apply(d, both, u + v).count() <= apply(d, both, u).count());
  }
}

TEST_CASE("renumbering is an explicit bijective relabelling") {
  Dfa cerny = build_cerny(4);
  // the reset word lands on state 2; move it to slot 1
  auto perm = sink_to_front(4, 2);
  Dfa renamed = renumber(cerny, perm);
  auto s = shortest_sync_word(renamed);
  REQUIRE(s.has_value());
  CHECK(apply(renamed, StateSet::full(4), *s).single() == 1);
  CHECK(s->length() == 9);
  CHECK_THROWS(renumber(cerny, {1, 1, 2, 3}));
  CHECK_THROWS(renumber(cerny, {1, 2, 3}));
}

TEST_CASE("dfa text format round-trips bit-exactly") {
  gen::Rng rng(4242);
  for (int round = 0; round < 100; ++round) {
    Dfa d = gen::random_dfa(rng, rng.uniform(1, 8), rng.uniform(1, 4));
    std::string text = serialize_dfa(d);
    Dfa back = parse_dfa(text);
    CHECK(back == d);
    CHECK(serialize_dfa(back) == text);
  }
  // comments and blank lines are tolerated
  Dfa d = parse_dfa("# header\n\ndfa 2 1 # inline\nletters a\nstate 2: 1\nstate 1: 2\n");
  CHECK(d.step(1, 'a') == 2);
  CHECK(d.step(2, 'a') == 1);
}

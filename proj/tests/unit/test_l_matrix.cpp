#include <doctest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "syncmat/harness.hpp"
#include "syncmat/l_matrix.hpp"
#include "syncmat/series.hpp"

using namespace syncmat;

TEST_CASE("canonical companion of the five-state fixture") {
  WordMatrix m({2, 1, 1, 5, 3});  // column 1 carries rows {2,3}
  LMatrix l = canonical_l(m, 1);
  CHECK(l.matrix == WordMatrix({4, 1, 1, 4, 4}));
  CHECK(l.series() == 1);
  CHECK(l.off_column == 4);
  CHECK_FALSE(l.boundary);
  CHECK(q_equivalent(l.matrix, m, 1));
  // counts: n-i+1 units in column q, i-1 in the other column
  CHECK(l.matrix.column_units(1).count() == 5 - l.column_index() + 1);
  CHECK(l.matrix.column_units(l.off_column).count() == l.column_index() - 1);
}

TEST_CASE("near-full column pins the companion next to the sink") {
  // n-1 units in column 1: the lone leftover row goes to column 2
  WordMatrix m({1, 1, 1, 1, 2});
  LMatrix l = canonical_l(m, 1);
  CHECK(l.off_column == 2);
  CHECK(l.matrix == WordMatrix({1, 1, 1, 1, 2}));
}

TEST_CASE("canonical companion of a letter matrix") {
  Dfa kari = build_kari();
  WordMatrix mb = matrix_of_word(kari, Word("b"));
  LMatrix l = canonical_l(mb, 1);
  CHECK(l.matrix.column_units(1) == mb.column_units(1));
  CHECK(l.matrix.column_units(1).count() == 6 - l.column_index() + 1);
  CHECK(l.matrix.column_units(l.off_column).count() == l.column_index() - 1);
  CHECK(l.series() == evaluate(SeriesContext::sink(6, 1), mb));
}

TEST_CASE("reset matrices have no canonical companion") {
  CHECK_THROWS(canonical_l(WordMatrix::all_to(4, 1), 1));
  CHECK_THROWS(canonical_l(WordMatrix({2, 2, 2, 2}), 1));  // empty column 1
}

TEST_CASE("set constructor honours the sink transposition") {
  // q = 2, three of four states in the set: the leftover row moves to
  // column 1 because the two-column index collides with q
  LMatrix l = l_from_set(4, StateSet::of(4, {2, 3, 4}), 2);
  CHECK(l.off_column == 1);
  CHECK(l.matrix == WordMatrix({1, 2, 2, 2}));
  // full set is the flagged boundary
  LMatrix b = l_from_set(3, StateSet::full(3), 2);
  CHECK(b.boundary);
  CHECK(b.matrix == WordMatrix::all_to(3, 2));
  CHECK_THROWS(l_from_set(3, StateSet(3), 1));
}

TEST_CASE("minimal solutions of the reset equation") {
  SUBCASE("single letter on the four-state automaton") {
    Dfa cerny = build_cerny(4);
    WordMatrix mb = matrix_of_word(cerny, Word("b"));
    WordMatrix ms = WordMatrix::all_to(4, 2);
    LMatrix x = solve_min(mb, ms, 2);
    CHECK(x.matrix.column_units(2) == StateSet::of(4, {2, 3, 4}));
    CHECK(x.series() == 2);  // |R(u)| - 1
    CHECK(mb * x.matrix == ms);
  }

  SUBCASE("the reset word itself forces the singleton solution") {
    Dfa cerny = build_cerny(4);
    WordMatrix msword = matrix_of_word(cerny, Word("baaabaaab"));
    WordMatrix ms = WordMatrix::all_to(4, 2);
    LMatrix x = solve_min(msword, ms, 2);
    CHECK(x.matrix.column_units(2) == StateSet::singleton(4, 2));
    CHECK(x.series() == 0);
    CHECK(x.column_index() == 4);
  }

  SUBCASE("a long prefix of the six-state reference word") {
    Dfa kari = build_kari();
    WordMatrix mu = matrix_of_word(kari, Word("baabababaabb"));
    CHECK(mu.nonzero_columns() == StateSet::parse("011100"));
    WordMatrix ms = WordMatrix::all_to(6, 1);
    LMatrix x = solve_min(mu, ms, 1);
    CHECK(x.matrix.column_units(1) == StateSet::parse("011100"));
    CHECK(x.series() == 2);
    CHECK(mu * x.matrix == ms);
  }

  SUBCASE("right-hand side must be a reset matrix onto q") {
    WordMatrix mu = WordMatrix::identity(3);
    CHECK_THROWS(solve_min(mu, WordMatrix::all_to(3, 2), 1));
    CHECK_THROWS(solve_min(mu, WordMatrix({1, 1, 2}), 1));
  }
}

TEST_CASE("series values of minimal solutions match the image size") {
  gen::Rng rng(41);
  for (int round = 0; round < 300; ++round) {
    const int n = rng.uniform(2, 7);
    const State q = rng.uniform(1, n);
    WordMatrix u = gen::random_word_matrix(rng, n);
    WordMatrix ms = WordMatrix::all_to(n, q);
    LMatrix x = solve_min(u, ms, q);
    CHECK(u * x.matrix == ms);
    CHECK(x.series() == u.nonzero_columns().count() - 1);
  }
}

TEST_CASE("solutions are exactly the supersets of the minimal one") {
  gen::Rng rng(42);
  for (int round = 0; round < 60; ++round) {
    const int n = rng.uniform(2, 5);
    const State q = rng.uniform(1, n);
    WordMatrix u = gen::random_word_matrix(rng, n);
    WordMatrix ms = WordMatrix::all_to(n, q);
    LMatrix x = solve_min(u, ms, q);
    auto enumeration = solutions_by_subsumption(x, u, ms, q);
    REQUIRE(enumeration.enumerated);
    const StateSet ru = u.nonzero_columns();
    CHECK(enumeration.count ==
          (1ull << (n - ru.count())));
    // exhaustive cross-check over every nonempty column set
    unsigned long long solving = 0;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      StateSet set = StateSet::from_mask(n, mask);
      LMatrix candidate = l_from_set(n, set, q);
      const bool solves = u * candidate.matrix == ms;
      CHECK(solves == ru.subset_of(set));
      if (solves) ++solving;
    }
    CHECK(solving == enumeration.count);
  }
}

TEST_CASE("full minimal solution admits only itself") {
  WordMatrix u = WordMatrix::identity(4);
  WordMatrix ms = WordMatrix::all_to(4, 3);
  LMatrix x = solve_min(u, ms, 3);
  CHECK(x.boundary);
  auto enumeration = solutions_by_subsumption(x, u, ms, 3);
  CHECK(enumeration.count == 1);
  CHECK(enumeration.solutions.front().matrix == ms);
}

TEST_CASE("companions built from nested sets are ordered by containment") {
  LMatrix lu = l_from_set(6, StateSet::parse("101011"), 1);
  LMatrix lv = l_from_set(6, StateSet::parse("101111"), 1);
  CHECK(q_subsumes(lv.matrix, lu.matrix, 1));
  CHECK_FALSE(q_subsumes(lu.matrix, lv.matrix, 1));
  CHECK(lv.series() == lu.series() + 1);
}

TEST_CASE("annotated table line solves the prefix equation") {
  // printed superset 001101 covers the image 001100 of its prefix
  Dfa kari = build_kari();
  WordMatrix mu = matrix_of_word(kari, Word("baabababaabbabaabaab"));
  CHECK(mu.nonzero_columns() == StateSet::parse("001100"));
  LMatrix ly = l_from_set(6, StateSet::parse("001101"), 1);
  CHECK(mu * ly.matrix == WordMatrix::all_to(6, 1));
  CHECK(q_subsumes(ly.matrix, l_from_set(6, StateSet::parse("001100"), 1).matrix, 1));
}

TEST_CASE("enumeration limit reports count only") {
  WordMatrix u = WordMatrix::all_to(8, 1);
  WordMatrix ms = WordMatrix::all_to(8, 1);
  LMatrix x = solve_min(u, ms, 1);
  auto enumeration = solutions_by_subsumption(x, u, ms, 1, 16);
  CHECK_FALSE(enumeration.enumerated);
  CHECK(enumeration.count == 128);  // 2^7 supersets
  CHECK(enumeration.solutions.empty());
}

TEST_CASE("generalized inverses of the five-state fixture") {
  WordMatrix a({2, 2, 5, 3, 3});

  SUBCASE("both published variants appear in the full enumeration") {
    auto all = generalized_inverses(a, InversePolicy::all);
    CHECK_FALSE(all.truncated);
    CHECK(all.total == 100);  // 2 * 2 * 1 choices, 5^2 fills
    CHECK(all.inverses.size() == 100);
    WordMatrix variant1({2, 1, 5, 4, 3});
    WordMatrix variant2({1, 2, 4, 4, 3});
    int found = 0;
    for (const auto& gi : all.inverses) {
      CHECK(is_generalized_inverse(a, gi.inverse));
      if (gi.inverse == variant1 || gi.inverse == variant2) ++found;
    }
    CHECK(found == 2);
  }

  SUBCASE("canonical inverse is deterministic and invertible") {
    auto canonical = generalized_inverses(a, InversePolicy::canonical);
    REQUIRE(canonical.inverses.size() == 1);
    const WordMatrix& inv = canonical.inverses.front().inverse;
    CHECK(inv == WordMatrix({2, 1, 4, 5, 3}));
    CHECK(inv.is_permutation());
    CHECK(is_generalized_inverse(a, inv));
  }

  SUBCASE("invertible enumeration matches the fill arrangements") {
    auto invertible = generalized_inverses(a, InversePolicy::invertible_only);
    CHECK(invertible.total == 8);  // 4 unit choices x 2! fills
    CHECK(invertible.inverses.size() == 8);
    for (const auto& gi : invertible.inverses) {
      CHECK(gi.inverse.is_permutation());
      CHECK(is_generalized_inverse(a, gi.inverse));
    }
  }

  SUBCASE("tiny limits truncate with the full count preserved") {
    auto some = generalized_inverses(a, InversePolicy::all, 10);
    CHECK(some.truncated);
    CHECK(some.total == 100);
    CHECK(some.inverses.size() == 10);
  }
}

TEST_CASE("permutation matrices have exactly their inverse") {
  gen::Rng rng(43);
  for (int round = 0; round < 50; ++round) {
    WordMatrix p = gen::random_permutation_matrix(rng, rng.uniform(1, 7));
    auto all = generalized_inverses(p, InversePolicy::all);
    REQUIRE(all.total == 1);
    CHECK(all.inverses.front().inverse == p.inverse_permutation());
    CHECK(is_generalized_inverse(p, p.inverse_permutation()));
  }
}

TEST_CASE("inverse recognition rejects wrong candidates") {
  WordMatrix a({2, 2, 5, 3, 3});
  // row 2 of a candidate is pinned to a unit row of column 2, i.e. 1 or 2
  CHECK_FALSE(is_generalized_inverse(a, WordMatrix({2, 3, 5, 4, 3})));
  CHECK_FALSE(is_generalized_inverse(a, WordMatrix::identity(4)));
  // rows over zero columns of a are free: changing one keeps validity
  CHECK(is_generalized_inverse(a, WordMatrix({3, 1, 5, 4, 3})));
}

TEST_CASE("transport along a word") {
  SUBCASE("identity transport returns the same solution") {
    Dfa cerny = build_cerny(4);
    WordMatrix mu = matrix_of_word(cerny, Word("b"));
    LMatrix x = solve_min(mu, WordMatrix::all_to(4, 2), 2);
    WordMatrix id = WordMatrix::identity(4);
    auto result = inverse_transport(mu, id, id, x, 2);
    CHECK(result.minimal == x);
    CHECK(result.series_preserved);
  }

  SUBCASE("permutation letters preserve the series value") {
    Dfa cerny = build_cerny(4);
    WordMatrix mu = matrix_of_word(cerny, Word("b"));
    WordMatrix ma = matrix_of_word(cerny, Word("a"));
    LMatrix x = solve_min(mu, WordMatrix::all_to(4, 2), 2);
    auto result = inverse_transport(mu, ma, ma.inverse_permutation(), x, 2);
    CHECK(result.series_preserved);
    CHECK(result.minimal == solve_min(mu * ma, WordMatrix::all_to(4, 2), 2));
  }

  SUBCASE("reference chain step on the six-state automaton") {
    Dfa kari = build_kari();
    WordMatrix mu = matrix_of_word(kari, Word("baab"));
    WordMatrix ma = matrix_of_word(kari, Word("a"));
    LMatrix x = solve_min(mu, WordMatrix::all_to(6, 1), 1);
    auto result = inverse_transport(mu, ma, ma.inverse_permutation(), x, 1);
    CHECK(result.minimal == solve_min(matrix_of_word(kari, Word("baaba")),
                                      WordMatrix::all_to(6, 1), 1));
    CHECK(result.series_preserved);
  }

  SUBCASE("round trips escaping the image are reported with the column") {
    WordMatrix u({1, 1, 2});           // image {1,2}
    WordMatrix a({3, 3, 3});           // everything onto 3
    WordMatrix a_inv({1, 2, 3});       // valid inverse: a(3) = 3
    LMatrix x = solve_min(u, WordMatrix::all_to(3, 1), 1);
    CHECK_THROWS_WITH_AS(
        (void)inverse_transport(u, a, a_inv, x, 1), doctest::Contains("column 3"),
        std::invalid_argument);
  }

  SUBCASE("non-inverses and non-solutions are rejected") {
    WordMatrix u({1, 1, 2});
    WordMatrix a({2, 2, 3});
    // row 2 must pick a unit row of column 2 of a, so 3 is invalid
    LMatrix x = solve_min(u, WordMatrix::all_to(3, 1), 1);
    CHECK_THROWS((void)inverse_transport(u, a, WordMatrix({1, 3, 3}), x, 1));
    LMatrix wrong = l_from_set(3, StateSet::singleton(3, 3), 1);
    WordMatrix id = WordMatrix::identity(3);
    CHECK_THROWS((void)inverse_transport(u, id, id, wrong, 1));
  }
}

TEST_CASE("left companion law over random words") {
  gen::Rng rng(44);
  int checked = 0;
  for (int round = 0; round < 5000 && checked < 300; ++round) {
    const int n = rng.uniform(2, 6);
    const State q = rng.uniform(1, n);
    WordMatrix u = gen::random_word_matrix(rng, n);
    WordMatrix v = gen::random_word_matrix(rng, n);
    const int ku = u.column_units(q).count();
    const int kvu = (v * u).column_units(q).count();
    if (ku == 0 || ku == n || kvu == 0 || kvu == n) continue;
    ++checked;
    LMatrix lu = canonical_l(u, q);
    LMatrix lvu = canonical_l(v * u, q);
    CHECK(q_equivalent(v * lu.matrix, lvu.matrix, q));
    // equal series values (or a permutation factor) force exact equality
    if (lu.series() == lvu.series() || v.is_permutation())
      CHECK(v * lu.matrix == lvu.matrix);
  }
  CHECK(checked == 300);
}

TEST_CASE("value-preserving left factors can merge independent companions") {
  // Frozen refutation of the independence-transfer claim: b preserves the
  // series value of all three companions, yet folds two of them onto the
  // same matrix. Found by randomized search, pinned here.
  WordMatrix b({2, 4, 4, 2});
  LMatrix l0 = l_from_set(4, StateSet::of(4, {1, 4}), 1);
  LMatrix l1 = l_from_set(4, StateSet::of(4, {2, 3}), 1);
  LMatrix l2 = l_from_set(4, StateSet::of(4, {1, 2}), 1);
  std::vector<WordMatrix> family{l0.matrix, l1.matrix, l2.matrix};
  CHECK(rank_of_family(std::span<const WordMatrix>(family)) == 3);
  std::vector<WordMatrix> mapped;
  for (const auto& m : family) {
    WordMatrix bm = b * m;
    CHECK(bm.column_units(1).count() == m.column_units(1).count());
    mapped.push_back(bm);
  }
  CHECK(mapped[0] == l1.matrix);
  CHECK(mapped[1] == l0.matrix);
  CHECK(mapped[2] == l0.matrix);  // collision: independence does not transfer
  CHECK(rank_of_family(std::span<const WordMatrix>(mapped)) == 2);
}

TEST_CASE("permutation left factors do preserve companion independence") {
  gen::Rng rng(45);
  for (int round = 0; round < 60; ++round) {
    const int n = rng.uniform(3, 6);
    WordMatrix b = gen::random_permutation_matrix(rng, n);
    Basis basis(n);
    std::vector<WordMatrix> mapped;
    for (int tries = 0; tries < 30; ++tries) {
      WordMatrix x = gen::random_word_matrix(rng, n);
      const int kx = x.column_units(1).count();
      if (kx == 0 || kx == n) continue;
      LMatrix lx = canonical_l(x, 1);
      if (!basis.insert(lx.matrix).independent) continue;
      mapped.push_back(b * lx.matrix);
    }
    CHECK(rank_of_family(std::span<const WordMatrix>(mapped)) ==
          static_cast<int>(mapped.size()));
  }
}

TEST_CASE("constant-series companion families have rank at most n") {
  gen::Rng rng(46);
  for (int round = 0; round < 100; ++round) {
    const int n = rng.uniform(3, 7);
    const State q = rng.uniform(1, n);
    const int size = rng.uniform(1, n - 1);  // column-q unit count
    std::vector<WordMatrix> family;
    for (int i = 0; i < 3 * n; ++i) {
      StateSet set(n);
      while (set.count() < size) set.insert(rng.uniform(1, n));
      family.push_back(l_from_set(n, set, q).matrix);
    }
    CHECK(rank_of_family(std::span<const WordMatrix>(family)) <= n);
  }
}

TEST_CASE("k distinct series values admit rank at most n k") {
  gen::Rng rng(47);
  for (int round = 0; round < 50; ++round) {
    const int n = rng.uniform(3, 7);
    const State q = 1;
    std::set<int> sizes;
    std::vector<WordMatrix> family;
    for (int i = 0; i < 4 * n; ++i) {
      const int size = rng.uniform(1, n - 1);
      sizes.insert(size);
      StateSet set(n);
      while (set.count() < size) set.insert(rng.uniform(1, n));
      family.push_back(l_from_set(n, set, q).matrix);
    }
    CHECK(rank_of_family(std::span<const WordMatrix>(family)) <=
          n * static_cast<int>(sizes.size()));
  }
}

TEST_CASE("prefix chains report honest ranks") {
  Dfa cerny = build_cerny(4);
  Word s("baaabaaab");
  ChainReport report = independent_chain(cerny, 2, s);
  CHECK(report.lines.size() == 9);
  CHECK(report.rank == 8);  // the all-prefix family spans one dimension less
  for (const auto& line : report.lines) {
    CHECK(line.contained);
    CHECK(line.solves);
    CHECK_FALSE(line.substituted);
    CHECK(line.series == line.used.count() - 1);
  }
  CHECK_THROWS(independent_chain(cerny, 1, s));  // wrong sink
}

TEST_CASE("series values along prefixes never increase") {
  for (auto [dfa, q, s] :
       {std::tuple{build_cerny(4), State{2}, Word("baaabaaab")},
        std::tuple{build_kari(), State{1}, Word("baabababaabbabaabaababaab")}}) {
    ChainReport report = independent_chain(dfa, q, s);
    long long prev = dfa.state_count();
    for (const auto& line : report.lines) {
      CHECK(line.series <= prev);
      prev = line.series;
    }
  }
}

TEST_CASE("chain serializers cover the layout") {
  ChainReport report = independent_chain(build_cerny(4), 2, Word("baaabaaab"));
  std::string tsv = chain_to_tsv(report);
  CHECK(tsv.find("baaabaaab\t0100\t1\t0\t") != std::string::npos);
  std::string json = chain_to_json(report);
  CHECK(json.find("\"rank\"") != std::string::npos);
}

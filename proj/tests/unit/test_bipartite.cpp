#include <doctest.h>

#include <numeric>

#include "chipfire/bipartite.hpp"

using namespace chipfire;

namespace {

Graph kaa(long long a) {
  const std::vector<long long> p{a, a};
  return generate("complete_bipartite", p);
}

}  // namespace

TEST_SUITE("bipartite") {
  TEST_CASE("sorted sides") {
    const Graph g = kaa(2);
    const SortedSides a = sorted_sides(g, ChipConfig{2, 1, 2, 1});
    CHECK(a.sigma_L == std::vector<Chips>{2, 1});
    CHECK(a.sigma_R == std::vector<Chips>{2, 1});
    CHECK(a.total_L == 3);
    CHECK(a.total_R == 3);

    const SortedSides b = sorted_sides(g, ChipConfig{1, 2, 0, 3});
    CHECK(b.sigma_L == std::vector<Chips>{2, 1});
    CHECK(b.L_order == std::vector<Vertex>{1, 0});
    CHECK(b.sigma_R == std::vector<Chips>{3, 0});
    CHECK(b.R_order == std::vector<Vertex>{3, 2});

    const SortedSides tie = sorted_sides(g, ChipConfig{1, 1, 0, 0});
    CHECK(tie.L_order == std::vector<Vertex>{0, 1});

    CHECK_THROWS_AS(sorted_sides(Graph(3, {{0, 1}, {1, 2}, {0, 2}}), ChipConfig{1, 1, 1}), InputError);
    const std::vector<long long> p{2, 3};
    CHECK_THROWS_AS(side_size(generate("complete_bipartite", p)), InputError);
  }

  TEST_CASE("conjugates") {
    const Graph g = kaa(2);
    const SortedSides ss = sorted_sides(g, ChipConfig{2, 1, 2, 1});
    CHECK(conjugate(ss, 1).config == ChipConfig{1, 2, 1, 2});
    CHECK(conjugate(ss, 2).config == ChipConfig{2, 1, 2, 1});
    const SortedSides zero = sorted_sides(g, ChipConfig{0, 0, 3, 3});
    CHECK_THROWS_AS(conjugate(zero, 1), InputError);
    CHECK_FALSE(try_conjugate(zero, 1).has_value());
    CHECK_THROWS_AS(conjugate(ss, 0), InputError);
    CHECK_THROWS_AS(conjugate(ss, 3), InputError);
  }

  TEST_CASE("conjugates follow the per-vertex formula and keep side totals") {
    for (long long a = 2; a <= 4; ++a) {
      const Graph g = kaa(a);
      Rng rng(static_cast<std::uint64_t>(a));
      for (int k = 0; k < 300; ++k) {
        std::vector<Chips> values(2 * a);
        for (auto& x : values) x = static_cast<Chips>(rng.between(0, 2 * a));
        const SortedSides ss = sorted_sides(g, ChipConfig(values));
        for (int j = 1; j <= a; ++j) {
          const auto c = try_conjugate(ss, j);
          if (!c) continue;
          std::uint64_t left = 0;
          for (int i = 0; i < a; ++i) {
            const Vertex v = ss.L_order[i];
            const std::int64_t expected = static_cast<std::int64_t>(ss.sigma_L[i]) + j - (i + 1 <= j ? a : 0);
            CHECK(static_cast<std::int64_t>(c->config[v]) == expected);
            left += c->config[v];
          }
          CHECK(left == ss.total_L);
          CHECK(c->config.total() == ss.total_L + ss.total_R);
        }
      }
    }
  }

  TEST_CASE("side stats") {
    const Graph g = kaa(2);
    const SideStats a = side_stats(sorted_sides(g, ChipConfig{2, 1, 3, 3}));
    CHECK(a.l_L == 1);
    CHECK(a.r_L == 1);
    CHECK(a.l_R == 3);
    CHECK(a.r_R == 2);
    const SideStats b = side_stats(sorted_sides(g, ChipConfig{1, 0, 0, 0}));
    CHECK(b.l_L == 0);
    CHECK(b.r_L == 0);
  }

  TEST_CASE("fire counts") {
    const Graph g = kaa(2);
    const ChipConfig sigma{2, 1, 2, 1};
    const SortedSides ss = sorted_sides(g, sigma);
    const FireCountTable tab = fire_counts(g, sigma, 1, conjugate(ss, 1));
    CHECK(tab.u[1] == std::vector<std::int64_t>{1, 0, 1, 0});
    CHECK(tab.alpha_L[1] == 1);
    CHECK(tab.u_conj[1] == std::vector<std::int64_t>{0, 1, 0, 1});
    CHECK(tab.z[1][0] == -1);
    CHECK(tab.z[1][1] == 1);

    const FireCountTable none = fire_counts(g, sigma, 0);
    CHECK(none.u.size() == 1);
    CHECK(none.u[0] == std::vector<std::int64_t>{0, 0, 0, 0});

    const FireCountTable longer = fire_counts(g, sigma, 8);
    for (std::size_t t = 1; t <= 8; ++t) {
      for (Vertex v = 0; v < 4; ++v) CHECK(longer.u[t][v] >= longer.u[t - 1][v]);
      CHECK(longer.alpha_L[t] == longer.u[t][0] + longer.u[t][1]);
    }

    CHECK_THROWS_AS(fire_counts(g, sigma, 2, ConjugateConfig{1, ChipConfig{1, 1}}), InputError);
  }

  TEST_CASE("lemma battery on the worked example") {
    const Graph g = kaa(2);
    const VerificationReport r = check_bipartite_lemmas(g, ChipConfig{2, 1, 2, 1});
    CHECK(r.passed());
    CHECK(activity(find_cycle(g, ChipConfig{2, 1, 2, 1})) == Rational(1, 2));
    CHECK(r.tallies.at("conjugates_checked") == 2);
    CHECK(r.tallies.at("confinement_checked") == 1);
  }

  TEST_CASE("lemma battery over every capped K_{2,2} game") {
    const VerificationReport r = bipartite_lemma_sweep(2, SweepOptions{});
    CHECK(r.games_checked == 256);
    CHECK(r.passed());
  }

  TEST_CASE("theorem 2 on K_{2,2}") {
    const VerificationReport r = verify_theorem2(2, Theorem2Options{});
    CHECK(r.passed());
    CHECK(r.header["range"] == Json::array({5, 7}));
    CHECK(r.header["statement_range"] == Json::array({7, 7}));
    CHECK(find_cycle(kaa(2), ChipConfig{2, 2, 2, 2}).period == 1);
    CHECK_THROWS_AS(verify_theorem2(1, Theorem2Options{}), InputError);
  }
}

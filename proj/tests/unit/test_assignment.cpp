#include <doctest.h>

#include "chipfire/assignment.hpp"
#include "chipfire/configs.hpp"

using namespace chipfire;

namespace {

Graph c4() {
  const std::vector<long long> p{4};
  return generate("cycle", p);
}

Graph triangle() { return Graph(3, {{0, 1}, {1, 2}, {0, 2}}); }

}  // namespace

TEST_SUITE("assignment") {
  TEST_CASE("first-fire partition") {
    const FirstFirePartition p = first_fire_partition(find_cycle(c4(), ChipConfig{2, 1, 1, 0}));
    REQUIRE(p.classes.size() == 4);
    for (std::size_t t = 0; t < 4; ++t) CHECK(p.classes[t] == std::vector<Vertex>{static_cast<Vertex>(t)});

    const FirstFirePartition q = first_fire_partition(find_cycle(triangle(), ChipConfig{2, 2, 0}));
    CHECK(q.classes[0] == std::vector<Vertex>{0, 1});
    CHECK(q.classes[1] == std::vector<Vertex>{2});

    CHECK_THROWS_AS(first_fire_partition(find_cycle(triangle(), ChipConfig{0, 0, 0})), InputError);
  }

  TEST_CASE("edge classes") {
    const Graph g = c4();
    const EdgeClasses c(first_fire_partition(find_cycle(g, ChipConfig{2, 1, 1, 0})), g);
    CHECK(c.cross(0, 1) == std::vector<EdgeId>{g.find_edge(0, 1)});
    CHECK(c.cross(1, 2) == std::vector<EdgeId>{g.find_edge(1, 2)});
    CHECK(c.cross(2, 3) == std::vector<EdgeId>{g.find_edge(2, 3)});
    CHECK(c.cross(3, 0) == std::vector<EdgeId>{g.find_edge(0, 3)});
    CHECK(c.cross(0, 2).empty());
    for (std::size_t t = 0; t < 4; ++t) CHECK(c.internal(t).empty());

    const Graph tri = triangle();
    const EdgeClasses d(first_fire_partition(find_cycle(tri, ChipConfig{2, 2, 0})), tri);
    CHECK(d.internal(0) == std::vector<EdgeId>{tri.find_edge(0, 1)});
    CHECK(d.cross(0, 1).size() == 2);
  }

  TEST_CASE("C_4 worked example") {
    const Graph g = c4();
    const CycleSummary s = find_cycle(g, ChipConfig{2, 1, 1, 0});
    const ChipAssignment a = build_assignment(g, s);
    CHECK(a.total_chips == 4);
    const std::vector<int> per_edge = chips_per_edge(a, g);
    CHECK(per_edge == std::vector<int>{1, 1, 1, 1});
    for (const AssignedChip& chip : a.chips) {
      const Edge& e = g.edge(chip.edge);
      // the chip on (t, t+1) is placed on round t by vertex t; (0,3) closes at round 3
      CHECK(chip.home == e.u + (e.u == 0 && e.v == 3 ? 3 : 0));
      CHECK(chip.round == static_cast<std::size_t>(chip.home));
    }

    const ChipTrack tr = track_chips(g, s, a);
    CHECK(tr.rounds() == 5);
    const EdgeId e01 = g.find_edge(0, 1);
    std::size_t chip01 = 0;
    while (a.chips[chip01].edge != e01) ++chip01;
    const std::vector<Vertex> path{tr.locations[0][chip01], tr.locations[1][chip01], tr.locations[2][chip01],
                                   tr.locations[3][chip01], tr.locations[4][chip01]};
    CHECK(path == std::vector<Vertex>{0, 1, 0, 0, 0});

    CHECK(deprived_count(g, a, tr, 1, 0) == 1);
    CHECK(deprived_count(g, a, tr, 0, 3) == 1);
    CHECK(deprived_count(g, a, tr, 2, 2) == 0);

    const EdgeClasses classes(first_fire_partition(s), g);
    CHECK(verify_valid(a, classes, g));
    const EdgeWeightClass w = classify_edges(a, classes, tr, g);
    CHECK(w.heavy.empty());
    CHECK(w.light.size() == 4);

    const VerificationReport r = check_assignment_lemmas(g, s);
    CHECK(r.passed());
    CHECK(r.tallies.at("light_edges") == 4);
  }

  TEST_CASE("non-compliant input is rejected, not reported") {
    const Graph tri = triangle();
    CHECK_THROWS_AS(build_assignment(tri, find_cycle(tri, ChipConfig{2, 2, 0})), InputError);
    CHECK_THROWS_AS(check_assignment_lemmas(tri, find_cycle(tri, ChipConfig{2, 2, 0})), InputError);
  }

  TEST_CASE("validity rejects bad assignments") {
    const Graph g = c4();
    const CycleSummary s = find_cycle(g, ChipConfig{2, 1, 1, 0});
    const EdgeClasses classes(first_fire_partition(s), g);
    ChipAssignment unassigned = build_assignment(g, s);
    unassigned.chips[0].edge = kUnassigned;
    CHECK_FALSE(verify_valid(unassigned, classes, g));

    ChipAssignment crowded = build_assignment(g, s);
    const EdgeId target = crowded.chips[0].edge;
    crowded.chips[1].edge = target;
    crowded.chips[2].edge = target;
    CHECK_FALSE(verify_valid(crowded, classes, g));
  }

  TEST_CASE("tampered assignment breaks tracking") {
    const Graph g = c4();
    const CycleSummary s = find_cycle(g, ChipConfig{2, 1, 1, 0});
    ChipAssignment a = build_assignment(g, s);
    // retie the chip of (1,2) to (0,1): vertex 1 can no longer serve edge (1,2)
    for (AssignedChip& chip : a.chips) {
      if (chip.edge == g.find_edge(1, 2)) chip.edge = g.find_edge(0, 1);
    }
    CHECK_THROWS_AS(track_chips(g, s, a), AssignmentFailure);
  }

  TEST_CASE("every single-firing compliant game on up to 4 vertices certifies") {
    std::size_t compliant = 0;
    for (int n = 3; n <= 4; ++n) {
      for (const Graph& g : enumerate_connected(n, true)) {
        const ConfigSpace box{0, abundance_caps(g)};
        for (std::uint64_t total = 0; total <= box.cap_sum(); ++total) {
          for (const ChipConfig& sigma : enumerate_configs(ConfigSpace{total, box.caps})) {
            const CycleSummary s = find_cycle(g, sigma);
            if (!is_compliant(s, g)) continue;
            ++compliant;
            const ChipAssignment a = build_assignment(g, s);
            const ChipTrack tr = track_chips(g, s, a);
            CHECK(verify_valid(a, EdgeClasses(first_fire_partition(s), g), g));
            for (std::size_t c = 0; c < a.chips.size(); ++c) {
              const Edge& e = g.edge(a.chips[c].edge);
              for (std::size_t t = 0; t < tr.rounds(); ++t) {
                CHECK((tr.locations[t][c] == e.u || tr.locations[t][c] == e.v));
              }
            }
            // chip locations reproduce the cycle configurations
            for (std::size_t t = 0; t < tr.rounds(); ++t) {
              std::vector<Chips> count(n, 0);
              for (Vertex v : tr.locations[t]) ++count[v];
              CHECK(ChipConfig(count) == s.cycle[t % s.period]);
            }
            CHECK(check_assignment_lemmas(g, s).passed());
          }
        }
      }
    }
    CHECK(compliant > 0);
  }

  TEST_CASE("JSON dump layout") {
    const Graph g = c4();
    const CycleSummary s = find_cycle(g, ChipConfig{2, 1, 1, 0});
    const ChipAssignment a = build_assignment(g, s);
    const Json j = assignment_json(g, a, track_chips(g, s, a));
    CHECK(j["period"] == 4);
    REQUIRE(j["chips"].size() == 4);
    CHECK(j["chips"][0]["locations"].size() == 5);
    CHECK(j["chips"][0].contains("edge"));
  }
}

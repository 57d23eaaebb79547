#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "oracles.hpp"
#include "pnv/net.hpp"

using namespace pnv;

namespace {

// p0 --> t0 <--3-- p1, t0 --2--> p2, m0 = {2 p0, 3 p1}
Net weighted_net() {
  NetBuilder b("weighted");
  PlaceId p0 = b.add_place("p0", 2);
  PlaceId p1 = b.add_place("p1", 3);
  PlaceId p2 = b.add_place("p2");
  TransitionId t0 = b.add_transition("t0");
  b.add_input(p0, t0).add_input(p1, t0, 3).add_output(t0, p2, 2);
  return b.build();
}

// p1 -> t1 -> {p2, p3}; p2 -> t2 -> p4; p3 -> t3 -> p5; {p4, p5} -> t4 -> p6;
// p6 -> t5 -> p1
Net fork_join_net() {
  NetBuilder b("fork_join");
  PlaceId p1 = b.add_place("p1", 1);
  PlaceId p2 = b.add_place("p2");
  PlaceId p3 = b.add_place("p3");
  PlaceId p4 = b.add_place("p4");
  PlaceId p5 = b.add_place("p5");
  PlaceId p6 = b.add_place("p6");
  TransitionId t1 = b.add_transition("t1");
  TransitionId t2 = b.add_transition("t2");
  TransitionId t3 = b.add_transition("t3");
  TransitionId t4 = b.add_transition("t4");
  TransitionId t5 = b.add_transition("t5");
  b.add_input(p1, t1).add_output(t1, p2).add_output(t1, p3);
  b.add_input(p2, t2).add_output(t2, p4);
  b.add_input(p3, t3).add_output(t3, p5);
  b.add_input(p4, t4).add_input(p5, t4).add_output(t4, p6);
  b.add_input(p6, t5).add_output(t5, p1);
  return b.build();
}

Marking marking(std::vector<TokenCount> counts) { return Marking(std::move(counts)); }

}  // namespace

TEST_CASE("identifier rules") {
  CHECK(is_valid_identifier("p0"));
  CHECK(is_valid_identifier("_x"));
  CHECK(is_valid_identifier("counter'"));
  CHECK(is_valid_identifier("A_b'c'"));
  CHECK_FALSE(is_valid_identifier(""));
  CHECK_FALSE(is_valid_identifier("0p"));
  CHECK_FALSE(is_valid_identifier("'p"));
  CHECK_FALSE(is_valid_identifier("a-b"));
  CHECK_FALSE(is_valid_identifier("a b"));
  CHECK_FALSE(is_valid_identifier("a.b"));
}

TEST_CASE("builder validation") {
  NetBuilder b("n");
  PlaceId p = b.add_place("p", 1);
  TransitionId t = b.add_transition("t");

  CHECK_THROWS_AS(b.add_place("p"), NetError);
  CHECK_THROWS_AS(b.add_transition("t"), NetError);
  CHECK_THROWS_AS(b.add_place("9x"), NetError);
  CHECK_THROWS_AS(b.add_input(p, t, 0), NetError);
  CHECK_THROWS_AS(b.add_output(t, p, 0), NetError);
  CHECK_THROWS_AS(b.add_input(p, t, 1ull << 32), NetError);
  CHECK_THROWS_AS(b.add_place("big", 1ull << 32), NetError);
  CHECK_THROWS_AS(NetBuilder("9bad").build(), NetError);

  b.add_input(p, t);
  CHECK_THROWS_AS(b.add_input(p, t), NetError);
  CHECK_THROWS_AS(b.add_read(p, t), NetError);

  NetBuilder b2("n");
  PlaceId q = b2.add_place("q");
  TransitionId u = b2.add_transition("u");
  b2.add_read(q, u);
  CHECK_THROWS_AS(b2.add_read(q, u, 2), NetError);
  CHECK_THROWS_AS(b2.add_input(q, u), NetError);
  b2.add_output(u, q, 2);
  CHECK_THROWS_AS(b2.add_output(u, q), NetError);
  CHECK_NOTHROW(b2.build());
}

TEST_CASE("weighted firing") {
  Net net = weighted_net();
  TransitionId t0 = *net.find_transition("t0");

  CHECK(net.initial_marking() == marking({2, 3, 0}));
  CHECK(net.is_enabled(net.initial_marking(), t0));

  Marking m1 = net.fire(net.initial_marking(), t0);
  CHECK(m1 == marking({1, 0, 2}));

  CHECK_FALSE(net.is_enabled(m1, t0));
  CHECK_THROWS_AS(net.fire(m1, t0), NetError);
  CHECK(net.enabled_set(m1).empty());
}

TEST_CASE("read arcs test without consuming") {
  NetBuilder b("reads");
  PlaceId gate = b.add_place("gate", 1);
  PlaceId src = b.add_place("src", 1);
  PlaceId dst = b.add_place("dst");
  TransitionId t = b.add_transition("t");
  b.add_read(gate, t, 2).add_input(src, t).add_output(t, dst);
  Net net = b.build();

  CHECK_FALSE(net.is_enabled(net.initial_marking(), t));

  Marking two = marking({2, 1, 0});
  CHECK(net.is_enabled(two, t));
  Marking fired = net.fire(two, t);
  CHECK(fired == marking({2, 0, 1}));
  CHECK(fired.at(gate) == 2);
}

TEST_CASE("enabled set follows declaration order") {
  Net net = fork_join_net();
  Marking split = marking({0, 1, 1, 0, 0, 0});
  std::vector<TransitionId> en = net.enabled_set(split);
  REQUIRE(en.size() == 2);
  CHECK(net.transition_name(en[0]) == "t2");
  CHECK(net.transition_name(en[1]) == "t3");
}

TEST_CASE("steps, concurrency and conflict") {
  Net net = fork_join_net();
  TransitionId t2 = *net.find_transition("t2");
  TransitionId t3 = *net.find_transition("t3");
  Marking split = marking({0, 1, 1, 0, 0, 0});

  CHECK(net.step_enabled(split, Step({t2, t3})));
  CHECK(net.fire_step(split, Step({t2, t3})) == marking({0, 0, 0, 1, 1, 0}));
  CHECK(net.are_concurrent(split, t2, t3));
  CHECK_FALSE(net.in_conflict(split, t2, t3));

  NetBuilder b("fight");
  PlaceId p = b.add_place("p", 1);
  PlaceId a = b.add_place("a");
  PlaceId c = b.add_place("c");
  TransitionId ta = b.add_transition("ta");
  TransitionId tb = b.add_transition("tb");
  b.add_input(p, ta).add_output(ta, a);
  b.add_input(p, tb).add_output(tb, c);
  Net fight = b.build();
  CHECK(fight.in_conflict(fight.initial_marking(), ta, tb));
  CHECK_FALSE(fight.are_concurrent(fight.initial_marking(), ta, tb));
  CHECK_FALSE(fight.step_enabled(fight.initial_marking(), Step({ta, tb})));
  CHECK_THROWS_AS(fight.fire_step(fight.initial_marking(), Step({ta, tb})), NetError);

  CHECK(fight.step_enabled(Marking({2, 0, 0}), Step({ta, tb})));
  CHECK(fight.fire_step(Marking({2, 0, 0}), Step({ta, tb})) == marking({0, 1, 1}));

  CHECK_THROWS_AS(fight.in_conflict(fight.initial_marking(), ta, ta), NetError);
  CHECK_THROWS_AS(fight.are_concurrent(fight.initial_marking(), ta, ta), NetError);
  CHECK_THROWS_AS(Step({}), NetError);
  CHECK_THROWS_AS(Step({ta, ta}), NetError);
}

TEST_CASE("steps share read tokens but sum consumed ones") {
  NetBuilder b("shared");
  PlaceId p = b.add_place("p", 1);
  PlaceId a = b.add_place("a");
  PlaceId c = b.add_place("c");
  TransitionId ra = b.add_transition("ra");
  TransitionId rb = b.add_transition("rb");
  TransitionId eat = b.add_transition("eat");
  b.add_read(p, ra).add_output(ra, a);
  b.add_read(p, rb).add_output(rb, c);
  b.add_input(p, eat).add_output(eat, a);
  Net net = b.build();
  Marking m0 = net.initial_marking();

  CHECK(net.are_concurrent(m0, ra, rb));
  CHECK(net.fire_step(m0, Step({ra, rb})) == marking({1, 1, 1}));

  CHECK(net.in_conflict(m0, ra, eat));
  Marking two = marking({2, 0, 0});
  CHECK(net.are_concurrent(two, ra, eat));
  CHECK(net.fire_step(two, Step({ra, eat})) == marking({1, 2, 0}));
}

TEST_CASE("marking value semantics") {
  Marking a = marking({1, 2, 0});
  Marking b = marking({1, 2, 0});
  Marking c = marking({1, 1, 1});
  CHECK(a == b);
  CHECK(std::hash<Marking>{}(a) == std::hash<Marking>{}(b));
  CHECK(a != c);
  CHECK(a.covers(c) == false);
  CHECK(a.covers(marking({1, 2, 0})));
  CHECK(a.covers(marking({0, 0, 0})));
  CHECK(marking({1, 2, 1}).covers(a));
  CHECK_THROWS_AS(a.covers(marking({1})), NetError);
  CHECK(c < a);
}

TEST_CASE("lookup and bad ids") {
  Net net = weighted_net();
  CHECK(net.name() == "weighted");
  CHECK(net.place_count() == 3);
  CHECK(net.transition_count() == 1);
  CHECK_FALSE(net.find_place("nope").has_value());
  CHECK_FALSE(net.find_transition("nope").has_value());
  CHECK(net.place_name(*net.find_place("p1")) == "p1");
  CHECK_THROWS_AS(net.place_name(PlaceId{4}), NetError);
  CHECK_THROWS_AS(net.transition_name(TransitionId{1}), NetError);
  CHECK_THROWS_AS(net.is_enabled(Marking(2), TransitionId{0}), NetError);
  CHECK_THROWS_AS(net.fire(net.initial_marking(), TransitionId{9}), NetError);
}

TEST_CASE("canonical arc order groups by transition") {
  NetBuilder b("order");
  PlaceId p0 = b.add_place("p0", 1);
  PlaceId p1 = b.add_place("p1", 1);
  TransitionId t0 = b.add_transition("t0");
  TransitionId t1 = b.add_transition("t1");
  b.add_output(t1, p0);
  b.add_read(p1, t0);
  b.add_output(t0, p0);
  b.add_input(p0, t0);
  b.add_input(p1, t1);
  Net net = b.build();

  const std::vector<Arc>& arcs = net.arcs();
  REQUIRE(arcs.size() == 5);
  CHECK(arcs[0] == Arc{p0, t0, ArcKind::input, 1});
  CHECK(arcs[1] == Arc{p1, t0, ArcKind::read, 1});
  CHECK(arcs[2] == Arc{p0, t0, ArcKind::output, 1});
  CHECK(arcs[3] == Arc{p1, t1, ArcKind::input, 1});
  CHECK(arcs[4] == Arc{p0, t1, ArcKind::output, 1});

  CHECK(net.inputs(t0).size() == 1);
  CHECK(net.reads(t0).size() == 1);
  CHECK(net.outputs(t0).size() == 1);
}

TEST_CASE("random nets agree with the oracle") {
  std::mt19937_64 rng(20240811);
  for (int round = 0; round < 200; ++round) {
    oracle::GenNet gen = oracle::random_net(rng);
    Net net = oracle::to_net(gen);
    oracle::ONet ref = oracle::to_oracle(gen);

    oracle::OMarking om = ref.m0;
    Marking m = net.initial_marking();
    for (int step = 0; step < 20; ++step) {
      std::vector<TransitionId> enabled_lib = net.enabled_set(m);
      std::vector<std::size_t> enabled_ref;
      for (std::size_t t = 0; t < ref.transitions; ++t)
        if (oracle::enabled(ref, om, t)) enabled_ref.push_back(t);

      REQUIRE(enabled_lib.size() == enabled_ref.size());
      for (std::size_t i = 0; i < enabled_lib.size(); ++i)
        REQUIRE(enabled_lib[i].value == enabled_ref[i]);
      if (enabled_lib.empty()) break;

      std::size_t choice = oracle::pick(rng, 0, enabled_lib.size() - 1);
      m = net.fire(m, enabled_lib[choice]);
      om = oracle::fire(ref, om, enabled_ref[choice]);
      REQUIRE(m.counts() == om);
    }
  }
}

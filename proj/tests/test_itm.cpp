#include <doctest.h>

#include "itmlab/induction.hpp"
#include "itmlab/itm.hpp"
#include "oracles.hpp"

#include <random>

using namespace itmlab;

static IntervalSet pieces_to_set(const oracles::Pieces& p) {
  std::vector<IntervalSet::Interval> iv;
  for (const auto& [a, b] : p) iv.push_back({a, b});
  return IntervalSet(std::move(iv));
}

TEST_CASE("from_bt") {
  ITM m = from_bt({Rat(1, 2), Rat(1, 4)});
  REQUIRE(m.branches().size() == 3);
  CHECK(m.branches()[0].right == Rat(1, 2));
  CHECK(m.branches()[0].translation == Rat(1, 2));
  CHECK(m.branches()[1].right == Rat(3, 4));
  CHECK(m.branches()[1].translation == Rat(1, 4));
  CHECK(m.branches()[2].translation == Rat(-3, 4));
  CHECK_FALSE(m.degenerate());

  ITM rot = from_bt({Rat(1, 3), Rat(1, 3)});  // middle branch collapses
  CHECK(rot.branches().size() == 2);
  CHECK(rot.degenerate());

  ITM corner = from_bt({Rat(1), Rat(0)});  // identity on a single branch
  CHECK(corner.branches().size() == 1);
  CHECK(corner.branches()[0].translation == 0);
  CHECK(corner.degenerate());

  CHECK_THROWS_AS(from_bt({Rat(1, 4), Rat(1, 2)}), std::invalid_argument);
}

TEST_CASE("from_bruin") {
  BruinParams uniform{4, {Rat(1, 4), Rat(1, 4), Rat(1, 4), Rat(1, 4)}};
  ITM m = from_bruin(uniform);
  REQUIRE(m.branches().size() == 4);
  CHECK(m.branches()[0].translation == Rat(3, 4));
  CHECK(m.branches()[1].translation == Rat(1, 2));
  CHECK(m.branches()[2].translation == Rat(1, 4));
  CHECK(m.branches()[3].translation == Rat(-3, 4));

  // d = 3 Bruin with lambda = (1/2, 1/4, 1/4) is the BT map (1/2, 1/4)
  ITM b3 = from_bruin({3, {Rat(1, 2), Rat(1, 4), Rat(1, 4)}});
  ITM bt = from_bt({Rat(1, 2), Rat(1, 4)});
  REQUIRE(b3.branches().size() == bt.branches().size());
  for (size_t i = 0; i < b3.branches().size(); ++i) {
    CHECK(b3.branches()[i].left == bt.branches()[i].left);
    CHECK(b3.branches()[i].translation == bt.branches()[i].translation);
  }

  ITM degen = from_bruin({4, {Rat(1, 2), Rat(0), Rat(1, 4), Rat(1, 4)}});
  CHECK(degen.branches().size() == 3);
  CHECK(degen.degenerate());

  CHECK_THROWS_AS(from_bruin({4, {Rat(1, 2), Rat(1, 2), Rat(1, 2), Rat(-1, 2)}}),
                  std::invalid_argument);
}

TEST_CASE("bt and bruin constructors agree on random d = 3 parameters") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 40; ++t) {
    long long qden = 2 + static_cast<long long>(rng() % 60);
    long long a = 1 + static_cast<long long>(rng() % qden);
    long long b = static_cast<long long>(rng() % (a + 1));
    Rat alpha(a, qden), beta(b, qden);
    ITM bt = from_bt({alpha, beta});
    ITM br = from_bruin({3, bt_lambda({alpha, beta})});
    REQUIRE(bt.branches().size() == br.branches().size());
    for (size_t i = 0; i < bt.branches().size(); ++i) {
      CHECK(bt.branches()[i].left == br.branches()[i].left);
      CHECK(bt.branches()[i].right == br.branches()[i].right);
      CHECK(bt.branches()[i].translation == br.branches()[i].translation);
    }
  }
}

TEST_CASE("evaluate") {
  ITM m = from_bt({Rat(1, 2), Rat(1, 4)});
  CHECK(m.evaluate(Rat(0)) == Rat(1, 2));
  CHECK(m.evaluate(Rat(4, 5)) == Rat(1, 20));  // third branch, 4/5 - 3/4
  ITM m2 = from_bt({Rat(2, 3), Rat(1, 3)});
  CHECK(m2.evaluate(Rat(1, 3)) == Rat(2, 3));
  CHECK_THROWS_AS(m.evaluate(Rat(1)), std::invalid_argument);
  CHECK_THROWS_AS(m.evaluate(Rat(-1, 10)), std::invalid_argument);
}

TEST_CASE("image") {
  ITM m = from_bt({Rat(2, 3), Rat(1, 3)});
  IntervalSet img = m.image(IntervalSet::full());
  REQUIRE(img.parts().size() == 2);
  CHECK(img.parts()[0].left == 0);
  CHECK(img.parts()[0].right == Rat(1, 3));
  CHECK(img.parts()[1].left == Rat(2, 3));
  CHECK(img.parts()[1].right == 1);

  CHECK(m.image(IntervalSet::empty()).is_empty());

  ITM rot = from_bt({Rat(2, 5), Rat(2, 5)});
  CHECK(rot.image(IntervalSet::full()) == IntervalSet::full());
}

TEST_CASE("attractor") {
  ITM m = from_bt({Rat(2, 3), Rat(1, 3)});
  IntervalSet o1 = attractor(m, 1);
  CHECK(o1.parts().size() == 2);
  CHECK(attractor(m, 2) == o1);  // stabilized
  ITM rot = from_bt({Rat(3, 7), Rat(3, 7)});
  for (int n = 0; n <= 4; ++n) CHECK(attractor(rot, n) == IntervalSet::full());

  // attractors are nested, lengths non-increasing, and both computation
  // orders agree with the brute-force intersection oracle
  ITM g = from_bt({Rat(5, 8), Rat(1, 3)});
  Rat prev(2);
  IntervalSet omega = IntervalSet::full();
  for (int n = 0; n <= 6; ++n) {
    IntervalSet direct = attractor(g, n);
    CHECK(direct == omega);
    CHECK(direct.total_length() <= prev);
    prev = direct.total_length();
    omega = g.image(omega);
    CHECK(omega.intersect(direct) == omega);  // Omega_{n+1} inside Omega_n
    // the fresh intersection route from the brute-force oracle
    CHECK(direct == pieces_to_set(oracles::brute_attractor(g, n)));
  }
}

TEST_CASE("classify") {
  CHECK(classify(from_bt({Rat(2, 3), Rat(1, 3)}), 10).kind == ClassifyResult::FiniteType);
  CHECK(classify(from_bt({Rat(2, 3), Rat(1, 3)}), 10).depth == 1);

  ClassifyResult rot = classify(from_bt({Rat(2, 5), Rat(2, 5)}), 5);
  CHECK(rot.kind == ClassifyResult::FiniteType);
  CHECK(rot.depth == 0);

  // parameters from a long infinite-type itinerary prefix stay unresolved
  ConePoint cp = params_from_itinerary(make_ks({2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2}), 3, 12);
  ITM deep = from_bruin({3, cp.lambda});
  ClassifyResult r = classify(deep, 6);
  CHECK(r.kind == ClassifyResult::Unresolved);
  CHECK(r.depth == 6);
  CHECK_THROWS_AS(classify(deep, 0), std::invalid_argument);
}

TEST_CASE("interval set canonicalization") {
  IntervalSet s({{Rat(1, 2), Rat(3, 4)}, {Rat(0), Rat(1, 2)}, {Rat(3, 4), Rat(3, 4)}});
  REQUIRE(s.parts().size() == 1);  // adjacent halves merge, empty piece drops
  CHECK(s.parts()[0].left == 0);
  CHECK(s.parts()[0].right == Rat(3, 4));
  CHECK(s.total_length() == Rat(3, 4));
  CHECK(s.contains(Rat(1, 2)));
  CHECK_FALSE(s.contains(Rat(3, 4)));

  IntervalSet t({{Rat(1, 4), Rat(7, 8)}});
  IntervalSet meet = s.intersect(t);
  REQUIRE(meet.parts().size() == 1);
  CHECK(meet.parts()[0].left == Rat(1, 4));
  CHECK(meet.parts()[0].right == Rat(3, 4));
}

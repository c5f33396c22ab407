#include <doctest.h>

#include "itmlab/steinberg.hpp"

using namespace itmlab;

TEST_CASE("elementary matrices") {
  CHECK(elementary_t(3, 1, 3) == IntMatrix(3, {1, 0, 1, 0, 1, 0, 0, 0, 1}));
  for (int d = 3; d <= 5; ++d)
    for (int i = 1; i <= d; ++i)
      for (int j = 1; j <= d; ++j) {
        if (i == j) continue;
        IntMatrix t = elementary_t(d, i, j);
        CHECK(t.det() == 1);
        CHECK(t * t.inverse() == IntMatrix::identity(d));
      }
  CHECK_THROWS_AS(elementary_t(3, 2, 2), std::invalid_argument);
}

TEST_CASE("commutation relations") {
  CHECK(verify_commutation_relations(3).pass());
  CHECK(verify_commutation_relations(4).pass());
  CHECK(verify_commutation_relations(5).pass());
  // the displayed instances
  IntMatrix t21 = elementary_t(3, 2, 1), t13 = elementary_t(3, 1, 3);
  CHECK(t21 * t13 * t21.inverse() * t13.inverse() == elementary_t(3, 2, 3));
  IntMatrix t12 = elementary_t(4, 1, 2), t34 = elementary_t(4, 3, 4);
  CHECK(t12 * t34 * t12.inverse() * t34.inverse() == IntMatrix::identity(4));
}

TEST_CASE("pivot identity") {
  CHECK(a_matrix(3, 2) * a_matrix(3, 1).inverse() ==
        IntMatrix(3, {1, 0, 1, 0, 1, 0, 0, 0, 1}));
  for (int d = 3; d <= 6; ++d)
    for (int k = 1; k <= 20; ++k)
      CHECK(a_matrix(d, k + 1) * a_matrix(d, k).inverse() == elementary_t(d, 1, d));
}

TEST_CASE("displayed inverse of A_d(1)") {
  for (int d = 3; d <= 6; ++d) {
    IntMatrix inv = a_matrix(d, 1).inverse();
    IntMatrix expect(d);
    for (int i = 1; i <= d - 2; ++i) expect.at(i - 1, i) = 1;  // shifted identity block
    expect.at(d - 2, 0) = 1;
    expect.at(d - 1, 0) = -1;
    expect.at(d - 1, d - 1) = 1;
    CHECK(inv == expect);
    // A_d(1) E_{1d} A_d(1)^{-1} = E_{2d} - E_{21}
    CHECK(a_matrix(d, 1) * elementary_e(d, 1, d) * inv ==
          elementary_e(d, 2, d) - elementary_e(d, 2, 1));
  }
}

TEST_CASE("full derivation for d = 3..6") {
  for (int d = 3; d <= 6; ++d) {
    Derivation der = derive_steinberg(d);
    CHECK(static_cast<int>(der.words().size()) == d * (d - 1));
    for (const auto& [key, w] : der.words()) {
      CHECK(w.value == elementary_t(d, key.first, key.second));
      // re-evaluating the fully expanded atom word gives the same matrix
      CHECK(evaluate_word(der.expand_refs(w.expr), d) == w.value);
    }
  }
}

TEST_CASE("word evaluation") {
  CHECK(evaluate_word(prod({}), 4) == IntMatrix::identity(4));
  Derivation der = derive_steinberg(4);
  WordPtr t14 = der.word(1, 4).expr;
  CHECK(evaluate_word(der.expand_refs(t14), 4) ==
        IntMatrix::identity(4) + elementary_e(4, 1, 4));
  // the inverse of a word evaluates to the inverse matrix
  CHECK(evaluate_word(inv(der.expand_refs(t14)), 4) == der.word(1, 4).value.inverse());
  CHECK_THROWS(evaluate_word(ref(1, 2), 4));  // unresolved reference
}

TEST_CASE("x-block maneuver") {
  for (int d = 3; d <= 6; ++d) {
    IntMatrix x = a_matrix(d, 1).inverse() * elementary_t(d, 1, d) * a_matrix(d, 1);
    CHECK(x.at(d - 2, d - 2) == 2);
    CHECK(x.at(d - 2, d - 1) == 1);
    CHECK(x.at(d - 1, d - 2) == -1);
    CHECK(x.at(d - 1, d - 1) == 0);
    // X conjugates T_{d-1,d} to T_{d,d-1}^{-1}
    CHECK(x.inverse() * elementary_t(d, d - 1, d) * x == elementary_t(d, d, d - 1).inverse());
  }
}

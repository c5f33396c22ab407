// Batch verification suites: each runs one family of exact identity checks
// end to end and returns a Report.  The CLI exposes them as `verify --suite`
// and the acceptance harness drives them directly.

#pragma once

#include "itmlab/report.hpp"

#include <cstdint>

namespace itmlab {

// Column growth and recursion/product agreement over seeded random itineraries.
Report suite_column_growth(int n_sequences, int max_len, int kmax, std::uint64_t seed);

// Perron-Frobenius separation of A_3(2) and B_3(2) powers.
Report suite_pf(int search_limit = 40);

// Z_d(k) = J_d A_d(k)^{-1} J_d^{-1} (d = 3..8, k = 1..50), the d = 3
// base change (k = 1..100), Z~_d(k) = A_d(k)^T, and the height-matrix
// factorizations against the displayed single-step forms.
Report suite_conjugation(int d_max = 8, int k_max_j = 50, int k_max_base = 100);

Report suite_commutators(int d);

// Full Steinberg derivation plus the displayed pivot identities.
Report suite_steinberg(int d);

// The exact polynomial values: the cubic discriminant family, the quartic
// certificate for A_4(2), and the pinching product A_4(1)A_4(2)A_4(3).
Report suite_galois();

// Non-commutation and infinite-order certificates used by the density lemmas.
Report suite_order();

// The five checkable hypotheses behind the weak-mixing transfer theorem,
// at desk scale (the Monte Carlo exponent hypothesis is delegated to the
// lyapunov command and re-checked in the acceptance harness).
Report suite_hypotheses(int kmax = 1000);

}  // namespace itmlab

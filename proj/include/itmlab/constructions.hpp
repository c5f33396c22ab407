// The two explicit non-weak-mixing constructions, as machine-checkable plans.
//
// Both pick an itinerary (k_i) block by block from the tower-length ledger
//   |u_{n+1}| = |v_n|,  |v_{n+1}| = |w_n| + k_{n+1} |u_n|,
//   |w_{n+1}| = |w_n| + (k_{n+1}-1) |u_n|,   seeds (1,1,1):
//
//  * the eigenvalue -1 plan keeps |u_{2n}|, |w_{2n}| even and |v_{2n}| odd
//    while the u-tower swallows all but a 2^{-n} fraction of the space;
//  * the irrational-rotation plan solves a congruence for k_{3n+2}, forces a
//    growth inequality and a coprimality for k_{3n+1}, and sets k_{3n+3} to a
//    tower length, so that q_n = |u_{3n}| become continued-fraction
//    denominators of an irrational gamma = [0; y_1, y_2, ...].
//
// Residual checks sample exact rational points at level midpoints of the
// actual towers of a representative ITM (reconstructed from the itinerary)
// and drive them through the exact map, so the symbolic tower structure is
// played back against the genuine dynamics.

#pragma once

#include "itmlab/induction.hpp"
#include "itmlab/itm.hpp"
#include "itmlab/rational.hpp"
#include "itmlab/report.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace itmlab {

// Exact interval of a single tower level, located through the cutting-and-
// stacking block structure (O(level) rational operations, any height).
class TowerGeometry {
 public:
  TowerGeometry(const KSequence& ks, int depth, const std::vector<Rat>& lambda);

  int depth() const { return depth_; }
  const std::vector<Rat>& lengths(int m) const { return lengths_[m]; }
  const std::vector<BigInt>& heights(int m) const { return heights_[m]; }
  Rat covered(int m) const;  // Lebesgue measure carried by the level-m towers

  struct Iv {
    Rat left, right;
    Rat mid() const { return (left + right) / 2; }
    bool contains(const Rat& x) const { return left <= x && x < right; }
  };

  Iv base_interval(int m, int tower) const;                       // tower is 1-based
  Iv level_interval(int m, int tower, const BigInt& index) const;

 private:
  Iv descend(int m, int tower, BigInt index, Iv base) const;
  int depth_;
  KSequence ks_;
  std::vector<std::vector<Rat>> lengths_;      // unnormalized, per level
  std::vector<std::vector<BigInt>> heights_;   // per level
  std::vector<std::vector<Rat>> shifts_;       // induced translations, per level
  std::vector<Rat> left_;                      // left end of the induced domain
};

// --- eigenvalue -1 ----------------------------------------------------------

struct MinusOneBlock {
  int n = 0;           // block index, constraints at tower level 2n+2
  BigInt k_grow;       // k_{2n+1}, minimal for the growth inequality
  BigInt k_odd;        // k_{2n+2}
  BigInt slack;        // (k_{2n+1}-1)|u_{2n}| - 2^n (|w_{2n}| + k_{2n+2}|v_{2n}|)
};

struct MinusOnePlan {
  int n_blocks = 0;
  long long odd_choice = 1;
  KSequence ks;  // k_1 .. k_{2 n_blocks + 2}
  std::vector<MinusOneBlock> blocks;
  std::vector<std::array<BigInt, 3>> tower_lengths;  // |u_m|,|v_m|,|w_m|, m = 0..2B+2

  json to_json() const;
};

// k_1 odd, k_2 = odd_choice + 1 (the parity ledger needs an even k_2),
// k_{2n+2} = odd_choice, k_{2n+1} minimal for the 2^n growth inequality.
MinusOnePlan build_minus_one(int n_blocks, long long odd_choice = 1);

struct ResidualResult {
  double residual = 0;
  long long points = 0;
  Rat excluded_relative;   // measure of the uncertified set within the towers
  Rat excluded_absolute;   // same, in Lebesgue measure of [0,1)
  Rat error_bound;         // gamma approximation error (irrational plan only)
  json details = json::object();
};

// max |f(Tx) + f(x)| over sampled certified points, f = +-1 by level parity
// on the u-tower at level 2n; the exact map must land each sampled point in
// the next level, so a nonzero value or a throw means the towers are wrong.
ResidualResult minus_one_residual(const MinusOnePlan& plan, int n, long long n_test_points,
                                  std::uint64_t seed = 1);

// --- irrational rotation ----------------------------------------------------

struct IrrationalBlock {
  int n = 0;
  BigInt k1, k2, k3;      // k_{3n+1}, k_{3n+2}, k_{3n+3}
  BigInt residue;         // |u_{3n-3}| mod |u_{3n}|
  BigInt y;               // y_{n+1}
  BigInt slack;           // growth inequality slack
  BigInt gcd_wv;          // gcd(|w_{3n+1}|, |v_{3n}|), certified 1
  BigInt gcd_uv_next;     // gcd(|u_{3n+3}|, |v_{3n+3}|), certified 1
};

struct IrrationalPlan {
  int n_blocks = 0;
  KSequence ks;  // k_1 .. k_{3 n_blocks}
  std::vector<IrrationalBlock> blocks;
  std::vector<std::array<BigInt, 3>> tower_lengths;  // m = 0..3B
  std::vector<BigInt> q;  // q_n = |u_{3n}|, n = 0..B
  std::vector<BigInt> y;  // y_1 .. y_B
  std::vector<BigInt> m;  // m_n = |w_{3n-3}| + ... + |w_0|, n = 1..B

  json to_json() const;
};

// Lengths square each block; n_blocks beyond 4 is not a desk-scale input.
IrrationalPlan build_irrational(int n_blocks);

struct GammaApproximant {
  Rat gamma;       // convergent p_n/q_n
  Rat error;       // rigorous |gamma_true - p_n/q_n| bound
  int level = 0;   // convergent index used
};

// Deepest convergent of [0; y_1, ..., y_B] meeting the requested precision;
// throws when the built blocks cannot certify it.
GammaApproximant gamma_approximant(const IrrationalPlan& plan, const Rat& precision);

// Length ledgers for the spacer towers z_n, b_n and the rotation towers
// c_n, d_n, checked against q_n, plus the rank-one series certificates.
Report spacer_towers(const IrrationalPlan& plan, int n_max);

// max |f(Tx) - e^{2 pi i gamma} f(x)| over sampled certified points, with
// level phases from the level-n convergent and the multiplier from the
// deepest one; the reported error_bound is the level-n convergent's bound.
ResidualResult gamma_eigen_residual(const IrrationalPlan& plan, int n, long long n_test_points,
                                    std::uint64_t seed = 1);

// Relative Lebesgue masses (within the covered part) of the level-m towers of
// the representative ITM of the itinerary.
std::vector<Rat> relative_tower_masses(const KSequence& ks, int level);

}  // namespace itmlab

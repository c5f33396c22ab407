// Renormalization of Bruin ITMs on d >= 3 intervals.
//
// One elementary step either strips lambda_1 - (lambda_2+...+lambda_d) off the
// first interval (case 1), exits to a finite-type reduction (case 2), or cuts
// lambda_1 from the last interval and relabels cyclically (case 3).  The
// accelerated step groups k-1 case-1 moves with one case-3 move; on lengths it
// acts by Z_d(k)^{-1}, on suspension heights by Z_d(k)~ = A_d(k)^T.  Equality
// in any case test is a measure-zero tie and is surfaced as Boundary instead
// of being resolved silently.

#pragma once

#include "itmlab/intmatrix.hpp"
#include "itmlab/rational.hpp"

#include <vector>

namespace itmlab {

enum class StepCase { Expand, Reduce, Swap, Boundary };

struct InductionStep {
  StepCase case_tag = StepCase::Boundary;
  IntMatrix length_matrix;         // D_d (Expand) or C_d (Swap)
  IntMatrix height_matrix;         // V_D (Expand) or V_C (Swap)
  std::vector<Rat> new_lambda;     // unnormalized; untouched on Reduce/Boundary
};

InductionStep r_step(const std::vector<Rat>& lambda, int d);

struct ZStep {
  StepCase outcome = StepCase::Boundary;  // Swap = completed block, else exit
  BigInt k = 0;                           // case-1 count + 1 when completed
  std::vector<Rat> new_lambda;            // renormalized to the simplex
};

// Full accelerated block computed in closed form (no case-1 iteration).
ZStep z_step(const std::vector<Rat>& lambda, int d);

struct Itinerary {
  enum Exit { Completed, Reduced, Boundary } exit = Completed;
  KSequence ks;
  int exit_step = 0;  // 1-based step at which a Reduce/Boundary occurred
};

Itinerary itinerary(const std::vector<Rat>& lambda, int d, int n);

struct ConePoint {
  std::vector<Rat> lambda;  // interior rational point of the image cone
  Rat error_bound;          // L-infinity diameter of the cone
};

// Nested-cone reconstruction: a point of Z(k_1)...Z(k_depth) Delta, normalized.
ConePoint params_from_itinerary(const KSequence& ks, int d, int depth);

struct SuspensionState {
  std::vector<Rat> lambda;   // unnormalized true lengths
  std::vector<BigInt> h;     // tower heights
};

SuspensionState initial_suspension(const std::vector<Rat>& lambda);

// h' = Z~_d(k) h and lambda' = Z_d(k)^{-1} lambda, both exact.
SuspensionState height_step(const SuspensionState& s, const BigInt& k, int d);

// Inner product of heights and unnormalized lengths: the Lebesgue measure
// still covered by the Rokhlin towers, strictly below 1 once k > 1 occurs.
Rat area(const SuspensionState& s);

}  // namespace itmlab

// Substitutions chi_k on d letters, their algebra, and the Rokhlin tower
// names they generate.
//
//   chi_k: 1 -> 2, ..., d-2 -> d-1, d-1 -> d 1^k, d -> d 1^{k-1}
//
// Words are run-length sequences so that a single chi (whose k may be a big
// integer in the cutting-and-stacking constructions) never needs expanding.
// Tower names are kept as recursion trees over the previous level; a name is
// materialized only when its exact length fits under the cutoff.

#pragma once

#include "itmlab/intmatrix.hpp"
#include "itmlab/rational.hpp"

#include <optional>
#include <vector>

namespace itmlab {

struct Run {
  int letter = 0;  // 1-based
  BigInt count;
};

struct Word {
  std::vector<Run> runs;

  BigInt length() const;
  int first_letter() const;
  void append(int letter, const BigInt& count);
  std::vector<int> letters() const;  // requires small length
};

class Substitution {
 public:
  Substitution(int d, std::vector<Word> images);
  int d() const { return d_; }
  const Word& image(int letter) const { return images_[letter - 1]; }  // 1-based

 private:
  int d_;
  std::vector<Word> images_;
};

Substitution chi(int d, const BigInt& k);
Substitution identity_substitution(int d);

// Apply t first, then s; calibrated so chi_k o chi_l maps 1 -> 3 1^k for d=3.
Substitution compose(const Substitution& s, const Substitution& t);
Substitution substitution_power(const Substitution& s, int m);

// Entry (i,j) counts letter i in the image of letter j; equals A_d(k) for chi.
IntMatrix abelianization(const Substitution& s);

bool is_left_proper(const Substitution& s);

struct Coincidence {
  enum Kind { Yes, Unknown } kind = Unknown;
  int power = 0;
  int letter = 0;
};

// Searches powers <= max_power for a letter b such that the images of all
// letters split as W b S with matching prefix abelianizations (prefix taken
// strictly before b) or matching suffix abelianizations.  Left-proper inputs
// short-circuit to Yes(1, common first letter).
Coincidence strong_coincidence(const Substitution& s, int max_power);

// Rokhlin tower names u_n = chi_{k_1}...chi_{k_n}(1) etc., lazily.
class TowerFamily {
 public:
  static TowerFamily build(const KSequence& ks, int n, int d, const BigInt& cutoff);

  int level() const { return n_; }
  int dim() const { return d_; }
  const std::vector<BigInt>& heights(int m) const;  // heights at level m
  const std::vector<BigInt>& heights() const { return heights(n_); }

  // Materialized name, present iff its length is at most the cutoff.
  std::optional<std::vector<int>> name(int m, int j) const;  // j is 1-based

  int letter_at(int m, int j, const BigInt& index) const;

  // Exact length of the common prefix of all d names at level m, capped.
  BigInt common_prefix(int m, const BigInt& cap) const;

 private:
  TowerFamily() = default;
  int d_ = 0, n_ = 0;
  BigInt cutoff_;
  KSequence ks_;
  std::vector<std::vector<BigInt>> heights_;              // per level
  std::vector<std::vector<std::vector<Run>>> blocks_;     // per level >= 1, per name
};

TowerFamily tower_names(const KSequence& ks, int n, const BigInt& cutoff, int d = 3);

// Max over towers of the distance from t * h_i^{(n)} to the nearest integer.
Rat veech_residual(const KSequence& ks, const Rat& t, int n, int d = 3);

struct BalancedReport {
  std::vector<int> balanced_levels;
  bool share_certified = true;  // false when the prefix cap was too small
};

// Levels n <= n_max at which every tower keeps mass >= mass_eps and the names
// share a common prefix of proportion >= share_eps of the shortest tower.
// Mass of a level-n tower is its refined proportion: the share of its blocks
// among the levels of the deepest u tower the itinerary reaches.
BalancedReport balanced_times(const KSequence& ks, int n_max, const Rat& mass_eps,
                              const Rat& share_eps);

}  // namespace itmlab

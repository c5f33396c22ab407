// Constructive generation of the Steinberg generators T_ij = I + E_ij as
// words in the matrices A_d(k).
//
// The derivation follows six explicit stages: last column via the pivot
// A_d(2) A_d(1)^{-1} = T_{1d} and shift conjugations, first column, lower
// diagonal (ending with a 2x2 SL(2,Z) maneuver around the block [[2,1],[-1,0]]),
// last row, upper diagonal, and commutator chains for the rest.  Every word is
// evaluated exactly and must reproduce its target; a mismatch aborts with the
// failing stage, since it would contradict the generation theorem.

#pragma once

#include "itmlab/intmatrix.hpp"
#include "itmlab/report.hpp"

#include <map>
#include <memory>
#include <vector>

namespace itmlab {

struct WordExpr;
using WordPtr = std::shared_ptr<const WordExpr>;

// Expression over A_d(k) atoms and previously derived generators; conjugations
// and commutators stay structured instead of being flattened to atom lists.
struct WordExpr {
  enum Kind { Atom, Ref, Product, Inverse } kind = Product;
  BigInt k;                      // Atom: A_d(k)
  int ref_i = 0, ref_j = 0;      // Ref: T_{ij} derived earlier
  std::vector<WordPtr> factors;  // Product (empty product = identity)
  WordPtr base;                  // Inverse
};

WordPtr atom(const BigInt& k);
WordPtr ref(int i, int j);
WordPtr prod(std::vector<WordPtr> factors);
WordPtr inv(WordPtr w);
WordPtr conj(WordPtr g, WordPtr x);  // g x g^{-1}
WordPtr comm(WordPtr a, WordPtr b);  // a b a^{-1} b^{-1}

struct SteinbergWord {
  int i = 0, j = 0;   // target T_ij
  WordPtr expr;
  IntMatrix value;    // exact evaluation, equal to I + E_ij
};

class Derivation {
 public:
  explicit Derivation(int d);
  int dim() const { return d_; }
  const std::map<std::pair<int, int>, SteinbergWord>& words() const { return words_; }
  const SteinbergWord& word(int i, int j) const;

  // Evaluate an expression; Ref nodes resolve to already-derived generators.
  IntMatrix evaluate(const WordPtr& w) const;
  // Substitute every Ref by its stored expression, leaving atoms only.
  WordPtr expand_refs(const WordPtr& w) const;

 private:
  friend Derivation derive_steinberg(int d);
  void install(int i, int j, WordPtr expr, const char* stage);
  int d_;
  std::map<std::pair<int, int>, SteinbergWord> words_;
};

// Executes the six stages for d >= 3; throws with the failing stage on any
// identity mismatch.
Derivation derive_steinberg(int d);

// Atom-only evaluation used by callers that build their own expressions.
IntMatrix evaluate_word(const WordPtr& w, int d);

// Both commutation families over all admissible index tuples.
Report verify_commutation_relations(int d);

}  // namespace itmlab

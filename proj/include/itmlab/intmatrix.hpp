// Exact integer matrices and the structural cocycle families.
//
// The renormalization of a Bruin ITM on d intervals is driven by a handful of
// integer matrix families, all of which live here:
//
//   A_d(k)   incidence matrix of the substitution chi_k (lengths, backward)
//   B_3(k)   transpose of O A_3(k)^{-1} O^{-1}, the inverse cocycle for d = 3
//   Z_d(k)   accelerated induction on lengths, Z_d(k) = D_d^{k-1} C_d
//   Zt_d(k)  accelerated induction on suspension heights, equal to A_d(k)^T
//
// together with the fixed conjugators (O, P_3, J_d, the base-change Q) and the
// single-step matrices D_d, C_d, V_D, V_C.  Everything is exact; entry growth
// is exponential in the word length so arbitrary precision is mandatory.

#pragma once

#include "itmlab/rational.hpp"
#include "itmlab/report.hpp"

#include <functional>
#include <initializer_list>

namespace itmlab {

class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(int d) : d_(d), e_(static_cast<size_t>(d) * d, BigInt(0)) {}
  IntMatrix(int d, std::initializer_list<long long> entries);

  static IntMatrix identity(int d);

  int dim() const { return d_; }
  BigInt& at(int i, int j) { return e_[static_cast<size_t>(i) * d_ + j]; }
  const BigInt& at(int i, int j) const { return e_[static_cast<size_t>(i) * d_ + j]; }

  IntMatrix operator*(const IntMatrix& o) const;
  IntMatrix operator+(const IntMatrix& o) const;
  IntMatrix operator-(const IntMatrix& o) const;
  bool operator==(const IntMatrix& o) const { return d_ == o.d_ && e_ == o.e_; }
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }

  IntMatrix transpose() const;
  IntMatrix pow(const BigInt& n) const;  // n >= 0
  BigInt det() const;                    // fraction-free elimination
  IntMatrix inverse() const;             // exact; throws unless det = +-1 yields integers

  std::vector<BigInt> apply(const std::vector<BigInt>& v) const;
  std::vector<Rat> apply(const std::vector<Rat>& v) const;

  bool nonnegative() const;
  bool positive() const;
  BigInt column_sum(int j) const;
  BigInt max_entry() const;
  BigInt min_entry() const;

  json to_json() const;

 private:
  int d_ = 0;
  std::vector<BigInt> e_;
};

// Max column L1 norm of a nonnegative matrix; rejects negative entries.
BigInt cnorm(const IntMatrix& m);

// Entrywise <= with at least one strict inequality.
bool matrix_order_lt(const IntMatrix& a, const IntMatrix& z);

// --- the families -----------------------------------------------------------

IntMatrix a_matrix(int d, const BigInt& k);    // det = (-1)^d
IntMatrix b3_matrix(const BigInt& k);          // d = 3 inverse cocycle
IntMatrix z_matrix(int d, const BigInt& k);    // D_d^{k-1} C_d
IntMatrix zt_matrix(int d, const BigInt& k);   // A_d(k)^T, height cocycle

IntMatrix o_matrix();                          // involution mapping Q^- to Q^+
IntMatrix p3_matrix();                         // relabeling 1 <-> 2
IntMatrix j_matrix(int d);                     // conjugates A_d(k)^{-1} to Z_d(k)
IntMatrix q_base_matrix();                     // columns e3, e2+e3, e1+e2

IntMatrix d_step_matrix(int d);                // lengths, case 1
IntMatrix c_step_matrix(int d);                // lengths, case 3 (relabeled)
IntMatrix vd_matrix(int d);                    // heights, case 1: I + E_{d1}
IntMatrix vc_matrix(int d);                    // heights, case 3 (relabeled)
IntMatrix va3_matrix();                        // d = 3 heights, case 1, unrelabeled
IntMatrix vca3_matrix();                       // d = 3 heights, case 3, unrelabeled

IntMatrix elementary_e(int d, int i, int j);   // E_ij, 1-based indices
IntMatrix elementary_t(int d, int i, int j);   // I + E_ij, 1-based indices

enum class Family { A, B3, Z, Zt };

// Ordered product M(k_1) M(k_2) ... M(k_n).
IntMatrix family_matrix(Family f, int d, const BigInt& k);
IntMatrix product(Family f, const KSequence& ks, int d);

// --- lemma verifiers --------------------------------------------------------

struct RecursionTriple {
  std::vector<BigInt> x, y, z;  // second column of the A-product, grown right to left
  std::vector<BigInt> a, b, c;  // third column of the B-product
};

// Sequences seeded from the rightmost factor; index j holds the designated
// column of the product of the last j factors.
RecursionTriple recursion_sequences(const KSequence& ks);

// Column 2 of the A-product and column 3 of the B-product attain the max
// column L1 norm at every prefix; also the proof's inequality |v1+v3| >= |v2|.
Report verify_column_growth(const KSequence& ks);

// a_j >= M z_j, b_j >= M (y_j+z_j), c_j >= M (x_j+y_j) at j0, persistence for
// j >= j0, and the resulting cnorm(A-prod) <= cnorm(B-prod)/M bound.
Report check_domination(const KSequence& ks, const Rat& m_bound, int j0);

// Smallest m <= search_limit with min entry of B_3(2)^m strictly larger than
// twice the max entry of A_3(2)^m, plus the explicit pair (15, 8997/4334).
Report pf_constants(int search_limit);

// inverse(Q) B_3(k) Q = Z_3(k) with Q = (e3 | e2+e3 | e1+e2).
Report conjugation_check_d3(const BigInt& k);

}  // namespace itmlab

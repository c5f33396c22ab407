// Exact polynomial certificates for the cocycle matrices: characteristic
// polynomials, discriminants, resolvent cubics, irreducibility and real-root
// counts over Q, and the Galois-pinching predicate for degrees 3 and 4.
//
// Conventions are pinned by calibration values:
//   discriminant(x^3 - x^2 - 3x + 1) = 148
//   resolvent_cubic(x^4 - x^3 - 2x + 1) = y^3 - 2y - 5

#pragma once

#include "itmlab/intmatrix.hpp"
#include "itmlab/rational.hpp"
#include "itmlab/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace itmlab {

// Integer polynomial, coefficients in ascending degree order, trimmed.
struct PolyZ {
  std::vector<BigInt> coeffs;

  PolyZ() = default;
  explicit PolyZ(std::vector<BigInt> c);
  static PolyZ from_ints(std::initializer_list<long long> c);

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  const BigInt& leading() const { return coeffs.back(); }
  bool monic() const { return !coeffs.empty() && coeffs.back() == 1; }
  BigInt eval(const BigInt& x) const;
  Rat eval(const Rat& x) const;
  PolyZ derivative() const;
  bool operator==(const PolyZ& o) const { return coeffs == o.coeffs; }

  std::string str(const std::string& var = "x") const;
};

PolyZ charpoly(const IntMatrix& m);           // monic, exact
BigInt discriminant(const PolyZ& p);          // resultant-based, deg >= 2
PolyZ resolvent_cubic(const PolyZ& p);        // monic quartic input
bool irreducible_over_Q(const PolyZ& p);      // monic, deg <= 4
bool has_rational_root(const PolyZ& p);
int count_real_roots(const PolyZ& p);         // Sturm, squarefree input
bool all_roots_real(const PolyZ& p);
bool is_perfect_square(const BigInt& x);

enum class GaloisGroup { S3, S4, Undetermined };

std::string to_string(GaloisGroup g);

struct GaloisReport {
  PolyZ poly;
  bool irreducible = false;
  BigInt disc;
  bool disc_is_square = false;
  bool roots_all_real = false;
  std::optional<PolyZ> resolvent;
  GaloisGroup group = GaloisGroup::Undetermined;
  bool pinching = false;

  json to_json() const;
};

// Degree 3: S3 iff the discriminant is not a perfect square.
// Degree 4: S4 certified iff the discriminant is not a perfect square and the
// resolvent cubic is irreducible; anything else is left Undetermined.
GaloisReport galois_certificate(const PolyZ& p);

// Conjunction of irreducibility, real roots and full symmetric group, for the
// characteristic polynomial of a 3x3 or 4x4 integer matrix.
GaloisReport is_pinching(const IntMatrix& m);

// Non-commutation of the pair plus infinite-order certificates (characteristic
// polynomial not a product of cyclotomic factors; degree <= 4 only).
Report aux_checks(const IntMatrix& m, const IntMatrix& n);

// True iff the polynomial factors completely into cyclotomics of degree <= 4;
// a false result certifies infinite order of any matrix with that char poly.
bool splits_into_cyclotomics(const PolyZ& p);

}  // namespace itmlab

#include "itmlab/galois.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace itmlab {

PolyZ::PolyZ(std::vector<BigInt> c) : coeffs(std::move(c)) {
  while (coeffs.size() > 1 && coeffs.back() == 0) coeffs.pop_back();
  if (coeffs.empty()) coeffs.push_back(BigInt(0));
}

PolyZ PolyZ::from_ints(std::initializer_list<long long> c) {
  std::vector<BigInt> v;
  for (auto x : c) v.emplace_back(x);
  return PolyZ(std::move(v));
}

BigInt PolyZ::eval(const BigInt& x) const {
  BigInt acc(0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Rat PolyZ::eval(const Rat& x) const {
  Rat acc(0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + Rat(*it);
  return acc;
}

PolyZ PolyZ::derivative() const {
  if (degree() <= 0) return PolyZ({BigInt(0)});
  std::vector<BigInt> d(coeffs.size() - 1);
  for (size_t i = 1; i < coeffs.size(); ++i) d[i - 1] = coeffs[i] * BigInt(i);
  return PolyZ(std::move(d));
}

std::string PolyZ::str(const std::string& var) const {
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const BigInt& c = coeffs[i];
    if (c == 0 && degree() > 0) continue;
    std::string term;
    BigInt a = c < 0 ? BigInt(-c) : c;
    if (i == 0 || a != 1) term += a.str();
    if (i > 0) {
      term += var;
      if (i > 1) term += "^" + std::to_string(i);
    }
    if (out.empty())
      out = (c < 0 ? "-" : "") + term;
    else
      out += (c < 0 ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

PolyZ charpoly(const IntMatrix& m) {
  // Faddeev-LeVerrier; the trace divisions are exact over Z.
  int d = m.dim();
  std::vector<BigInt> c(d + 1);
  c[d] = 1;
  IntMatrix n = IntMatrix::identity(d);
  for (int k = 1; k <= d; ++k) {
    IntMatrix mk = m * n;
    BigInt tr(0);
    for (int i = 0; i < d; ++i) tr += mk.at(i, i);
    BigInt q = -tr;
    if (q % k != 0) throw std::logic_error("inexact division in charpoly");
    c[d - k] = q / k;
    n = mk;
    for (int i = 0; i < d; ++i) n.at(i, i) += c[d - k];
  }
  return PolyZ(std::move(c));
}

// Sylvester resultant via fraction-free elimination.
static BigInt resultant(const PolyZ& p, const PolyZ& q) {
  int n = p.degree(), m = q.degree();
  if (n < 0 || m < 0) throw std::invalid_argument("zero polynomial");
  int dim = n + m;
  IntMatrix s(dim);
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) s.at(r, r + i) = p.coeffs[n - i];
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) s.at(m + r, r + i) = q.coeffs[m - i];
  return s.det();
}

BigInt discriminant(const PolyZ& p) {
  int n = p.degree();
  if (n < 2) throw std::invalid_argument("need degree >= 2");
  BigInt res = resultant(p, p.derivative());
  BigInt sign = (n * (n - 1) / 2) % 2 == 0 ? 1 : -1;
  BigInt num = sign * res;
  if (num % p.leading() != 0) throw std::logic_error("inexact discriminant division");
  return num / p.leading();
}

PolyZ resolvent_cubic(const PolyZ& p) {
  if (p.degree() != 4 || !p.monic()) throw std::invalid_argument("need a monic quartic");
  const BigInt& a = p.coeffs[3];
  const BigInt& b = p.coeffs[2];
  const BigInt& c = p.coeffs[1];
  const BigInt& d = p.coeffs[0];
  return PolyZ({-(a * a * d - 4 * b * d + c * c), a * c - 4 * d, -b, BigInt(1)});
}

static std::vector<BigInt> divisors_of(const BigInt& n0) {
  BigInt n = n0 < 0 ? BigInt(-n0) : n0;
  std::vector<BigInt> out;
  if (n == 0) return out;
  for (BigInt d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  return out;
}

bool has_rational_root(const PolyZ& p) {
  // Monic integer polynomial: rational roots are integer divisors of p(0).
  if (!p.monic()) throw std::invalid_argument("need a monic polynomial");
  if (p.coeffs[0] == 0) return true;
  for (const BigInt& d : divisors_of(p.coeffs[0])) {
    if (p.eval(d) == 0 || p.eval(BigInt(-d)) == 0) return true;
  }
  return false;
}

bool irreducible_over_Q(const PolyZ& p) {
  int n = p.degree();
  if (n > 4) throw std::invalid_argument("degrees above 4 are unsupported");
  if (!p.monic()) throw std::invalid_argument("need a monic polynomial");
  if (n <= 1) return n == 1;
  if (has_rational_root(p)) return false;
  if (n <= 3) return true;  // cubics and quadratics without roots are irreducible
  // Quartic: search monic integer quadratic factors x^2 + ux + v.
  const BigInt& a = p.coeffs[3];
  const BigInt& b = p.coeffs[2];
  const BigInt& c = p.coeffs[1];
  const BigInt& d = p.coeffs[0];
  if (d == 0) return false;
  for (const BigInt& dv : divisors_of(d)) {
    for (int s = 0; s < 2; ++s) {
      BigInt v = s == 0 ? dv : BigInt(-dv);
      if (d % v != 0) continue;
      BigInt vp = d / v;
      // u + u' = a, uv' + u'v = c, uu' + v + v' = b
      BigInt diff = vp - v;
      BigInt u;
      if (diff != 0) {
        BigInt numr = c - a * v;
        if (numr % diff != 0) continue;
        u = numr / diff;
      } else {
        // v = v': need c = a v and uu' = b - 2v with u + u' = a.
        if (c != a * v) continue;
        BigInt disc = a * a - 4 * (b - 2 * v);
        if (disc < 0 || !is_perfect_square(disc)) continue;
        BigInt r = sqrt(disc);
        if ((a + r) % 2 != 0) continue;
        u = (a + r) / 2;
      }
      BigInt up = a - u;
      if (u * up + v + vp == b && u * vp + up * v == c) return false;
    }
  }
  return true;
}

// Rational polynomial scaffolding for Sturm chains.
using QPoly = std::vector<Rat>;

static void qtrim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

static QPoly qrem(QPoly a, const QPoly& b) {
  while (a.size() >= b.size() && !a.empty()) {
    Rat f = a.back() / b.back();
    size_t off = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
    qtrim(a);
    if (a.empty()) break;
    if (a.size() >= b.size() && a.back() == 0) qtrim(a);
  }
  return a;
}

static int sign_at_infinity(const QPoly& p, bool plus) {
  if (p.empty()) return 0;
  int s = p.back() > 0 ? 1 : -1;
  if (!plus && (p.size() - 1) % 2 == 1) s = -s;
  return s;
}

static int sturm_variations(const std::vector<QPoly>& chain, bool plus) {
  int v = 0, prev = 0;
  for (const auto& p : chain) {
    int s = sign_at_infinity(p, plus);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

int count_real_roots(const PolyZ& p) {
  QPoly p0, p1;
  for (const auto& c : p.coeffs) p0.emplace_back(c);
  qtrim(p0);
  if (p0.size() <= 1) return 0;
  PolyZ dp = p.derivative();
  for (const auto& c : dp.coeffs) p1.emplace_back(c);
  qtrim(p1);

  std::vector<QPoly> chain{p0, p1};
  while (chain.back().size() > 1) {
    QPoly r = qrem(chain[chain.size() - 2], chain.back());
    if (r.empty()) {
      // gcd(p, p') is nonconstant: not squarefree.
      throw std::invalid_argument("polynomial is not squarefree");
    }
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  return sturm_variations(chain, false) - sturm_variations(chain, true);
}

bool all_roots_real(const PolyZ& p) {
  if (p.degree() == 3) {
    // Cubic shortcut: positive discriminant means three distinct real roots.
    BigInt d = discriminant(p);
    if (d == 0) throw std::invalid_argument("polynomial is not squarefree");
    return d > 0;
  }
  return count_real_roots(p) == p.degree();
}

bool is_perfect_square(const BigInt& x) {
  if (x < 0) return false;
  BigInt r = sqrt(x);
  return r * r == x;
}

std::string to_string(GaloisGroup g) {
  switch (g) {
    case GaloisGroup::S3: return "S3";
    case GaloisGroup::S4: return "S4";
    case GaloisGroup::Undetermined: return "Undetermined";
  }
  return "?";
}

json GaloisReport::to_json() const {
  json j;
  j["poly"] = poly.str();
  j["irreducible"] = irreducible;
  j["discriminant"] = disc.str();
  j["disc_is_square"] = disc_is_square;
  j["all_roots_real"] = roots_all_real;
  if (resolvent) j["resolvent"] = resolvent->str("y");
  j["group"] = to_string(group);
  j["pinching"] = pinching;
  return j;
}

GaloisReport galois_certificate(const PolyZ& p) {
  int n = p.degree();
  if (n != 3 && n != 4) throw std::invalid_argument("need degree 3 or 4");
  if (!irreducible_over_Q(p)) throw std::invalid_argument("reducible input");
  GaloisReport r;
  r.poly = p;
  r.irreducible = true;
  r.disc = discriminant(p);
  r.disc_is_square = is_perfect_square(r.disc);
  r.roots_all_real = all_roots_real(p);
  if (n == 3) {
    r.group = r.disc_is_square ? GaloisGroup::Undetermined : GaloisGroup::S3;
  } else {
    r.resolvent = resolvent_cubic(p);
    bool res_irred = !has_rational_root(*r.resolvent);  // cubic: no root <=> irreducible
    r.group = (!r.disc_is_square && res_irred) ? GaloisGroup::S4 : GaloisGroup::Undetermined;
  }
  bool full = (n == 3 && r.group == GaloisGroup::S3) || (n == 4 && r.group == GaloisGroup::S4);
  r.pinching = r.irreducible && r.roots_all_real && full;
  return r;
}

GaloisReport is_pinching(const IntMatrix& m) {
  if (m.dim() != 3 && m.dim() != 4) throw std::invalid_argument("need d = 3 or 4");
  PolyZ p = charpoly(m);
  if (!irreducible_over_Q(p)) {
    GaloisReport r;
    r.poly = p;
    r.irreducible = false;
    r.disc = discriminant(p);
    r.disc_is_square = is_perfect_square(r.disc);
    r.pinching = false;
    return r;
  }
  return galois_certificate(p);
}

static const std::vector<PolyZ>& cyclotomics_upto_deg4() {
  static const std::vector<PolyZ> list = {
      PolyZ::from_ints({-1, 1}),            // x - 1
      PolyZ::from_ints({1, 1}),             // x + 1
      PolyZ::from_ints({1, 1, 1}),          // x^2 + x + 1
      PolyZ::from_ints({1, 0, 1}),          // x^2 + 1
      PolyZ::from_ints({1, -1, 1}),         // x^2 - x + 1
      PolyZ::from_ints({1, 1, 1, 1, 1}),    // x^4 + x^3 + x^2 + x + 1
      PolyZ::from_ints({1, 0, 0, 0, 1}),    // x^4 + 1
      PolyZ::from_ints({1, -1, 1, -1, 1}),  // x^4 - x^3 + x^2 - x + 1
      PolyZ::from_ints({1, 0, -1, 0, 1}),   // x^4 - x^2 + 1
  };
  return list;
}

// Exact division of monic integer polynomials; empty result when not divisible.
static std::optional<PolyZ> exact_divide(const PolyZ& p, const PolyZ& q) {
  std::vector<BigInt> r = p.coeffs;
  int dn = p.degree(), dm = q.degree();
  if (dn < dm) return std::nullopt;
  std::vector<BigInt> quot(dn - dm + 1, BigInt(0));
  for (int i = dn - dm; i >= 0; --i) {
    BigInt f = r[i + dm];
    quot[i] = f;
    if (f == 0) continue;
    for (int j = 0; j <= dm; ++j) r[i + j] -= f * q.coeffs[j];
  }
  for (const auto& c : r)
    if (c != 0) return std::nullopt;
  // only the sub-dm coefficients remain in r; verified all zero above
  return PolyZ(std::move(quot));
}

bool splits_into_cyclotomics(const PolyZ& p) {
  if (p.degree() == 0) return true;
  if (!p.monic()) return false;
  for (const auto& cyc : cyclotomics_upto_deg4()) {
    if (cyc.degree() > p.degree()) continue;
    if (auto q = exact_divide(p, cyc)) {
      if (splits_into_cyclotomics(*q)) return true;
    }
  }
  return false;
}

// Complete decision for d <= 4: a non-cyclotomic factor certifies infinite
// order outright; otherwise every eigenvalue is a root of unity of order in
// {1,2,3,4,5,6,8,10,12} and finiteness reduces to one exact power test.
// (The fallback matters: charpoly(A_4(1)) = (x-1)^2 (x^2+x+1) splits, yet the
// matrix is not diagonalizable and has infinite order.)
static bool certified_infinite_order(const IntMatrix& m, const PolyZ& p) {
  if (!splits_into_cyclotomics(p)) return true;
  static const int orders[] = {1, 2, 3, 4, 5, 6, 8, 10, 12};
  long long lcm_order = 1;
  for (size_t idx = 0; idx < cyclotomics_upto_deg4().size(); ++idx) {
    if (exact_divide(p, cyclotomics_upto_deg4()[idx]))
      lcm_order = std::lcm(lcm_order, static_cast<long long>(orders[idx]));
  }
  return m.pow(lcm_order) != IntMatrix::identity(m.dim());
}

Report aux_checks(const IntMatrix& m, const IntMatrix& n) {
  Report rep("aux-checks");
  bool commute = (m * n) == (n * m);
  rep.add("non-commutation", !commute, "the two matrices do not commute");

  PolyZ pm = charpoly(m), pn = charpoly(n);
  auto& c1 = rep.add("infinite-order-first", certified_infinite_order(m, pm),
                     "no power of the matrix is the identity");
  c1.data["charpoly"] = pm.str();
  c1.data["charpoly_splits_into_cyclotomics"] = splits_into_cyclotomics(pm);
  auto& c2 = rep.add("infinite-order-second", certified_infinite_order(n, pn),
                     "no power of the matrix is the identity");
  c2.data["charpoly"] = pn.str();
  c2.data["charpoly_splits_into_cyclotomics"] = splits_into_cyclotomics(pn);
  return rep;
}

}  // namespace itmlab

#include "itmlab/intmatrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace itmlab {

IntMatrix::IntMatrix(int d, std::initializer_list<long long> entries) : IntMatrix(d) {
  if (static_cast<int>(entries.size()) != d * d)
    throw std::invalid_argument("entry count does not match dimension");
  int idx = 0;
  for (auto v : entries) e_[idx++] = v;
}

IntMatrix IntMatrix::identity(int d) {
  IntMatrix m(d);
  for (int i = 0; i < d; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (d_ != o.d_) throw std::invalid_argument("dimension mismatch");
  IntMatrix r(d_);
  for (int i = 0; i < d_; ++i)
    for (int k = 0; k < d_; ++k) {
      const BigInt& a = at(i, k);
      if (a == 0) continue;
      for (int j = 0; j < d_; ++j) r.at(i, j) += a * o.at(k, j);
    }
  return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
  if (d_ != o.d_) throw std::invalid_argument("dimension mismatch");
  IntMatrix r(d_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
  return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
  if (d_ != o.d_) throw std::invalid_argument("dimension mismatch");
  IntMatrix r(d_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
  return r;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix r(d_);
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j) r.at(j, i) = at(i, j);
  return r;
}

IntMatrix IntMatrix::pow(const BigInt& n) const {
  if (n < 0) throw std::invalid_argument("negative power");
  IntMatrix base = *this, acc = identity(d_);
  BigInt e = n;
  while (e > 0) {
    if ((e & 1) != 0) acc = acc * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return acc;
}

BigInt IntMatrix::det() const {
  // Bareiss fraction-free elimination; all divisions are exact.
  IntMatrix w = *this;
  BigInt prev(1);
  int sign = 1;
  for (int col = 0; col < d_ - 1; ++col) {
    int piv = -1;
    for (int i = col; i < d_; ++i)
      if (w.at(i, col) != 0) { piv = i; break; }
    if (piv < 0) return 0;
    if (piv != col) {
      for (int j = 0; j < d_; ++j) std::swap(w.at(piv, j), w.at(col, j));
      sign = -sign;
    }
    for (int i = col + 1; i < d_; ++i)
      for (int j = col + 1; j < d_; ++j)
        w.at(i, j) = (w.at(i, j) * w.at(col, col) - w.at(i, col) * w.at(col, j)) / prev;
    prev = w.at(col, col);
  }
  return sign > 0 ? w.at(d_ - 1, d_ - 1) : -w.at(d_ - 1, d_ - 1);
}

IntMatrix IntMatrix::inverse() const {
  // Gauss-Jordan over rationals, then require integrality of the result.
  int d = d_;
  std::vector<std::vector<Rat>> w(d, std::vector<Rat>(2 * d, Rat(0)));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) w[i][j] = Rat(at(i, j));
    w[i][d + i] = 1;
  }
  for (int col = 0; col < d; ++col) {
    int piv = -1;
    for (int i = col; i < d; ++i)
      if (w[i][col] != 0) { piv = i; break; }
    if (piv < 0) throw std::invalid_argument("singular matrix");
    std::swap(w[col], w[piv]);
    Rat p = w[col][col];
    for (int j = 0; j < 2 * d; ++j) w[col][j] /= p;
    for (int i = 0; i < d; ++i) {
      if (i == col || w[i][col] == 0) continue;
      Rat f = w[i][col];
      for (int j = 0; j < 2 * d; ++j) w[i][j] -= f * w[col][j];
    }
  }
  IntMatrix r(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const Rat& v = w[i][d + j];
      if (den(v) != 1) throw std::invalid_argument("inverse is not integral");
      r.at(i, j) = num(v);
    }
  return r;
}

std::vector<BigInt> IntMatrix::apply(const std::vector<BigInt>& v) const {
  if (static_cast<int>(v.size()) != d_) throw std::invalid_argument("dimension mismatch");
  std::vector<BigInt> r(d_, BigInt(0));
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j) r[i] += at(i, j) * v[j];
  return r;
}

std::vector<Rat> IntMatrix::apply(const std::vector<Rat>& v) const {
  if (static_cast<int>(v.size()) != d_) throw std::invalid_argument("dimension mismatch");
  std::vector<Rat> r(d_, Rat(0));
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j) r[i] += Rat(at(i, j)) * v[j];
  return r;
}

bool IntMatrix::nonnegative() const {
  return std::all_of(e_.begin(), e_.end(), [](const BigInt& v) { return v >= 0; });
}

bool IntMatrix::positive() const {
  return std::all_of(e_.begin(), e_.end(), [](const BigInt& v) { return v > 0; });
}

BigInt IntMatrix::column_sum(int j) const {
  BigInt s(0);
  for (int i = 0; i < d_; ++i) s += at(i, j);
  return s;
}

BigInt IntMatrix::max_entry() const { return *std::max_element(e_.begin(), e_.end()); }
BigInt IntMatrix::min_entry() const { return *std::min_element(e_.begin(), e_.end()); }

json IntMatrix::to_json() const {
  json rows = json::array();
  for (int i = 0; i < d_; ++i) {
    json row = json::array();
    for (int j = 0; j < d_; ++j) row.push_back(at(i, j).str());
    rows.push_back(row);
  }
  return rows;
}

BigInt cnorm(const IntMatrix& m) {
  if (!m.nonnegative()) throw std::invalid_argument("cnorm requires nonnegative entries");
  BigInt best(0);
  for (int j = 0; j < m.dim(); ++j) best = std::max(best, m.column_sum(j));
  return best;
}

bool matrix_order_lt(const IntMatrix& a, const IntMatrix& z) {
  if (a.dim() != z.dim()) throw std::invalid_argument("dimension mismatch");
  bool strict = false;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) {
      if (a.at(i, j) > z.at(i, j)) return false;
      if (a.at(i, j) < z.at(i, j)) strict = true;
    }
  return strict;
}

// --- families ---------------------------------------------------------------

IntMatrix a_matrix(int d, const BigInt& k) {
  if (d < 3) throw std::invalid_argument("need d >= 3");
  if (k < 1) throw std::invalid_argument("need k >= 1");
  IntMatrix m(d);
  m.at(0, d - 2) = k;
  m.at(0, d - 1) = k - 1;
  for (int i = 1; i <= d - 2; ++i) m.at(i, i - 1) = 1;
  m.at(d - 1, d - 2) = 1;
  m.at(d - 1, d - 1) = 1;
  return m;
}

IntMatrix b3_matrix(const BigInt& k) {
  if (k < 1) throw std::invalid_argument("need k >= 1");
  IntMatrix m(3);
  m.at(0, 1) = 1;
  m.at(1, 0) = 1;
  m.at(1, 2) = 1;
  m.at(2, 0) = k - 1;
  m.at(2, 2) = k;
  return m;
}

IntMatrix z_matrix(int d, const BigInt& k) {
  if (d < 3) throw std::invalid_argument("need d >= 3");
  if (k < 1) throw std::invalid_argument("need k >= 1");
  IntMatrix m(d);
  for (int j = 0; j < d; ++j) m.at(0, j) = (j == d - 2) ? k : k - 1;
  for (int i = 1; i <= d - 2; ++i) m.at(i, i - 1) = 1;
  m.at(d - 1, d - 2) = 1;
  m.at(d - 1, d - 1) = 1;
  return m;
}

IntMatrix zt_matrix(int d, const BigInt& k) { return a_matrix(d, k).transpose(); }

IntMatrix o_matrix() { return IntMatrix(3, {0, 1, 0, 1, 0, 0, 0, 0, -1}); }
IntMatrix p3_matrix() { return IntMatrix(3, {0, 1, 0, 1, 0, 0, 0, 0, 1}); }

IntMatrix j_matrix(int d) {
  if (d < 3) throw std::invalid_argument("need d >= 3");
  IntMatrix m(d);
  for (int i = 0; i < d - 1; ++i) m.at(i, d - 2 - i) = 1;  // antidiagonal block
  for (int j = 0; j < d; ++j) m.at(d - 1, j) = -1;
  return m;
}

IntMatrix q_base_matrix() { return IntMatrix(3, {0, 0, 1, 0, 1, 1, 1, 1, 0}); }

IntMatrix d_step_matrix(int d) {
  IntMatrix m = IntMatrix::identity(d);
  for (int j = 1; j < d; ++j) m.at(0, j) = 1;
  return m;
}

IntMatrix c_step_matrix(int d) {
  IntMatrix m(d);
  m.at(0, d - 2) = 1;
  for (int i = 1; i <= d - 2; ++i) m.at(i, i - 1) = 1;
  m.at(d - 1, d - 2) = 1;
  m.at(d - 1, d - 1) = 1;
  return m;
}

IntMatrix vd_matrix(int d) {
  IntMatrix m = IntMatrix::identity(d);
  m.at(d - 1, 0) = 1;
  return m;
}

IntMatrix vc_matrix(int d) {
  IntMatrix m(d);
  for (int i = 0; i <= d - 3; ++i) m.at(i, i + 1) = 1;
  m.at(d - 2, 0) = 1;
  m.at(d - 2, d - 1) = 1;
  m.at(d - 1, d - 1) = 1;
  return m;
}

IntMatrix va3_matrix() { return IntMatrix(3, {1, 0, 0, 0, 1, 0, 1, 0, 1}); }
IntMatrix vca3_matrix() { return IntMatrix(3, {1, 0, 1, 0, 1, 0, 0, 0, 1}); }

IntMatrix elementary_e(int d, int i, int j) {
  if (i < 1 || j < 1 || i > d || j > d) throw std::invalid_argument("index out of range");
  IntMatrix m(d);
  m.at(i - 1, j - 1) = 1;
  return m;
}

IntMatrix elementary_t(int d, int i, int j) {
  if (i == j) throw std::invalid_argument("need i != j");
  return IntMatrix::identity(d) + elementary_e(d, i, j);
}

IntMatrix family_matrix(Family f, int d, const BigInt& k) {
  switch (f) {
    case Family::A: return a_matrix(d, k);
    case Family::B3:
      if (d != 3) throw std::invalid_argument("B family is defined for d = 3");
      return b3_matrix(k);
    case Family::Z: return z_matrix(d, k);
    case Family::Zt: return zt_matrix(d, k);
  }
  throw std::logic_error("unreachable");
}

IntMatrix product(Family f, const KSequence& ks, int d) {
  if (ks.empty()) throw std::invalid_argument("empty itinerary");
  IntMatrix acc = family_matrix(f, d, ks[0]);
  for (size_t i = 1; i < ks.size(); ++i) acc = acc * family_matrix(f, d, ks[i]);
  return acc;
}

// --- lemma verifiers --------------------------------------------------------

RecursionTriple recursion_sequences(const KSequence& ks) {
  if (ks.empty()) throw std::invalid_argument("empty itinerary");
  size_t n = ks.size();
  RecursionTriple t;
  t.x = {ks[n - 1]};
  t.y = {BigInt(0)};
  t.z = {BigInt(1)};
  t.a = {BigInt(0)};
  t.b = {BigInt(1)};
  t.c = {ks[n - 1]};
  for (size_t j = 1; j < n; ++j) {
    const BigInt& k = ks[n - 1 - j];
    t.x.push_back((k - 1) * t.z[j - 1] + k * t.y[j - 1]);
    t.y.push_back(t.x[j - 1]);
    t.z.push_back(t.y[j - 1] + t.z[j - 1]);
    t.a.push_back(t.b[j - 1]);
    t.b.push_back(t.a[j - 1] + t.c[j - 1]);
    t.c.push_back((k - 1) * t.a[j - 1] + k * t.c[j - 1]);
  }
  return t;
}

Report verify_column_growth(const KSequence& ks) {
  Report rep("column-growth");
  rep.params()["ks_length"] = ks.size();

  IntMatrix pa = a_matrix(3, ks[0]);
  IntMatrix pb = b3_matrix(ks[0]);
  bool a_max = true, b_max = true, aux = true;
  for (size_t n = 0;; ++n) {
    BigInt s0 = pa.column_sum(0), s1 = pa.column_sum(1), s2 = pa.column_sum(2);
    if (s1 < s0 || s1 < s2) a_max = false;
    if (s0 + s2 < s1) aux = false;  // |v1 + v3| >= |v2|, proof invariant
    BigInt t2 = pb.column_sum(2);
    if (t2 < pb.column_sum(0) || t2 < pb.column_sum(1)) b_max = false;
    if (n + 1 == ks.size()) break;
    pa = pa * a_matrix(3, ks[n + 1]);
    pb = pb * b3_matrix(ks[n + 1]);
  }
  rep.add("a-second-column-max", a_max,
          "column 2 of the A-product attains the max column L1 norm at every prefix");
  rep.add("a-aux-inequality", aux, "|v1 + v3| >= |v2| at every prefix");
  rep.add("b-third-column-max", b_max,
          "column 3 of the B-product attains the max column L1 norm at every prefix");

  // The designated columns agree with the recursion sequences.
  RecursionTriple t = recursion_sequences(ks);
  size_t n = ks.size() - 1;
  bool cols_ok = pa.at(0, 1) == t.x[n] && pa.at(1, 1) == t.y[n] && pa.at(2, 1) == t.z[n] &&
                 pb.at(0, 2) == t.a[n] && pb.at(1, 2) == t.b[n] && pb.at(2, 2) == t.c[n];
  rep.add("recursion-matches-product", cols_ok,
          "recursion sequences reproduce the designated product columns");
  return rep;
}

Report check_domination(const KSequence& ks, const Rat& m_bound, int j0) {
  Report rep("domination");
  rep.params()["M"] = to_string(m_bound);
  rep.params()["j0"] = j0;
  RecursionTriple t = recursion_sequences(ks);
  size_t n = ks.size();
  if (j0 < 1 || static_cast<size_t>(j0) > n) throw std::invalid_argument("j0 out of range");

  auto holds_at = [&](size_t j) {
    size_t i = j - 1;
    return Rat(t.a[i]) >= m_bound * Rat(t.z[i]) &&
           Rat(t.b[i]) >= m_bound * Rat(t.y[i] + t.z[i]) &&
           Rat(t.c[i]) >= m_bound * Rat(t.x[i] + t.y[i]);
  };

  bool base = holds_at(static_cast<size_t>(j0));
  rep.add("holds-at-j0", base, "a_j >= M z_j, b_j >= M(y_j+z_j), c_j >= M(x_j+y_j) at j0");
  if (base) {
    bool persists = true;
    for (size_t j = static_cast<size_t>(j0) + 1; j <= n; ++j)
      if (!holds_at(j)) persists = false;
    rep.add("persists", persists, "the three inequalities hold for every j >= j0");

    // cnorm conclusion with factor 1/M, checked against the exact products.
    BigInt ca = cnorm(product(Family::A, ks, 3));
    BigInt cb = cnorm(product(Family::B3, ks, 3));
    bool concl = Rat(ca) * m_bound <= Rat(cb);
    auto& c = rep.add("cnorm-bound", concl, "cnorm(A-prod) <= cnorm(B-prod)/M");
    c.data["cnorm_a"] = ca.str();
    c.data["cnorm_b"] = cb.str();
  }
  return rep;
}

Report pf_constants(int search_limit) {
  Report rep("pf-constants");
  rep.params()["search_limit"] = search_limit;

  IntMatrix a2 = a_matrix(3, 2), b2 = b3_matrix(2);
  IntMatrix pa = IntMatrix::identity(3), pb = IntMatrix::identity(3);
  int first_m = -1;
  for (int m = 1; m <= search_limit; ++m) {
    pa = pa * a2;
    pb = pb * b2;
    if (pb.min_entry() > 2 * pa.max_entry()) { first_m = m; break; }
  }
  auto& ex = rep.add("exists-m", first_m > 0,
                     "some m with min entry of B_3(2)^m exceeding twice the max entry of A_3(2)^m");
  ex.data["smallest_m"] = first_m;

  // The explicit pair (m = 15, M' = 8997/4334): recorded, not required.
  IntMatrix a15 = a2.pow(15), b15 = b2.pow(15);
  BigInt maxa = a15.max_entry(), minb = b15.min_entry();
  bool pair_ok = maxa * 8997 <= minb * 4334;
  auto& pr = rep.add("pair-15-8997/4334", pair_ok,
                     "max entry of A_3(2)^15 <= (4334/8997) min entry of B_3(2)^15 (recorded outcome)");
  pr.data["max_entry_A15"] = maxa.str();
  pr.data["min_entry_B15"] = minb.str();
  pr.data["ratio_exceeds_2"] = (minb > 2 * maxa);
  return rep;
}

Report conjugation_check_d3(const BigInt& k) {
  Report rep("conjugation-d3");
  rep.params()["k"] = k.str();
  IntMatrix q = q_base_matrix();
  bool ok = q.inverse() * b3_matrix(k) * q == z_matrix(3, k);
  rep.add("base-change", ok, "inverse(Q) B_3(k) Q = Z_3(k) with Q = (e3 | e2+e3 | e1+e2)");
  return rep;
}

}  // namespace itmlab

#include "itmlab/steinberg.hpp"

#include <stdexcept>

namespace itmlab {

WordPtr atom(const BigInt& k) {
  auto w = std::make_shared<WordExpr>();
  w->kind = WordExpr::Atom;
  w->k = k;
  return w;
}

WordPtr ref(int i, int j) {
  auto w = std::make_shared<WordExpr>();
  w->kind = WordExpr::Ref;
  w->ref_i = i;
  w->ref_j = j;
  return w;
}

WordPtr prod(std::vector<WordPtr> factors) {
  auto w = std::make_shared<WordExpr>();
  w->kind = WordExpr::Product;
  w->factors = std::move(factors);
  return w;
}

WordPtr inv(WordPtr x) {
  auto w = std::make_shared<WordExpr>();
  w->kind = WordExpr::Inverse;
  w->base = std::move(x);
  return w;
}

WordPtr conj(WordPtr g, WordPtr x) { return prod({g, std::move(x), inv(std::move(g))}); }

WordPtr comm(WordPtr a, WordPtr b) { return prod({a, b, inv(a), inv(b)}); }

Derivation::Derivation(int d) : d_(d) {
  if (d < 3) throw std::invalid_argument("need d >= 3");
}

const SteinbergWord& Derivation::word(int i, int j) const {
  auto it = words_.find({i, j});
  if (it == words_.end()) throw std::out_of_range("generator not derived");
  return it->second;
}

static IntMatrix eval_impl(const WordPtr& w, int d,
                           const std::map<std::pair<int, int>, SteinbergWord>* table) {
  if (!w) throw std::invalid_argument("null expression");
  switch (w->kind) {
    case WordExpr::Atom:
      return a_matrix(d, w->k);
    case WordExpr::Ref: {
      if (!table) throw std::invalid_argument("expression contains unresolved references");
      auto it = table->find({w->ref_i, w->ref_j});
      if (it == table->end()) throw std::out_of_range("reference to underived generator");
      return it->second.value;
    }
    case WordExpr::Product: {
      IntMatrix acc = IntMatrix::identity(d);
      for (const auto& f : w->factors) acc = acc * eval_impl(f, d, table);
      return acc;
    }
    case WordExpr::Inverse:
      return eval_impl(w->base, d, table).inverse();
  }
  throw std::logic_error("unreachable");
}

IntMatrix Derivation::evaluate(const WordPtr& w) const { return eval_impl(w, d_, &words_); }

IntMatrix evaluate_word(const WordPtr& w, int d) { return eval_impl(w, d, nullptr); }

WordPtr Derivation::expand_refs(const WordPtr& w) const {
  switch (w->kind) {
    case WordExpr::Atom:
      return w;
    case WordExpr::Ref:
      return expand_refs(word(w->ref_i, w->ref_j).expr);
    case WordExpr::Product: {
      std::vector<WordPtr> fs;
      fs.reserve(w->factors.size());
      for (const auto& f : w->factors) fs.push_back(expand_refs(f));
      return prod(std::move(fs));
    }
    case WordExpr::Inverse:
      return inv(expand_refs(w->base));
  }
  throw std::logic_error("unreachable");
}

void Derivation::install(int i, int j, WordPtr expr, const char* stage) {
  IntMatrix v = evaluate(expr);
  if (v != elementary_t(d_, i, j))
    throw std::logic_error(std::string("steinberg identity failed at stage: ") + stage);
  words_[{i, j}] = SteinbergWord{i, j, std::move(expr), std::move(v)};
}

Derivation derive_steinberg(int d) {
  Derivation der(d);

  // Stage 1: last column.  T_{1d} = A(2) A(1)^{-1}; then, with
  // W_j = A(1) T_{jd} A(1)^{-1} = T_{j+1,d} T_{j+1,1}^{-1},
  // the conjugate W_j T_{1d} W_j^{-1} equals T_{1d} T_{j+1,d}^{-1}, which
  // isolates T_{j+1,d}.  Stage 2 falls out: T_{j+1,1} = W_j^{-1} T_{j+1,d}.
  der.install(1, d, prod({atom(2), inv(atom(1))}), "1: pivot A(2)A(1)^{-1}");
  std::vector<WordPtr> w_side(d);  // W_j, kept for stage 2
  for (int j = 1; j <= d - 2; ++j) {
    WordPtr wj = conj(atom(1), ref(j, d));
    IntMatrix expected =
        IntMatrix::identity(d) + elementary_e(d, j + 1, d) - elementary_e(d, j + 1, 1);
    if (der.evaluate(wj) != expected)
      throw std::logic_error("steinberg identity failed at stage: 1: shift conjugation");
    WordPtr xj = conj(wj, ref(1, d));
    der.install(j + 1, d, prod({inv(xj), ref(1, d)}), "1: isolation");
    w_side[j] = wj;
  }

  // Stage 2: first column.
  for (int j = 1; j <= d - 2; ++j)
    der.install(j + 1, 1, prod({inv(w_side[j]), ref(j + 1, d)}), "2: first column");

  // Stage 3: lower diagonal via the shift, then the SL(2,Z) maneuver for
  // T_{d,d-1} around X = A(1)^{-1} T_{1d} A(1).
  for (int j = 2; j <= d - 2; ++j)
    der.install(j + 1, j, conj(atom(1), ref(j, j - 1)), "3: shift chain");
  {
    WordPtr x = prod({inv(atom(1)), ref(1, d), atom(1)});
    IntMatrix xv = der.evaluate(x);
    IntMatrix expected = IntMatrix::identity(d);
    expected.at(d - 2, d - 2) = 2;
    expected.at(d - 2, d - 1) = 1;
    expected.at(d - 1, d - 2) = -1;
    expected.at(d - 1, d - 1) = 0;
    if (xv != expected)
      throw std::logic_error("steinberg identity failed at stage: 3: X block form");
    der.install(d, d - 1, prod({inv(x), inv(ref(d - 1, d)), x}), "3: SL(2,Z) maneuver");
  }

  // Stage 4: last row, walking backwards through the lower diagonal.
  for (int j = d - 2; j >= 1; --j)
    der.install(d, j, comm(ref(d, j + 1), ref(j + 1, j)), "4: last row");

  // Stage 5: upper diagonal.
  for (int j = 1; j <= d - 2; ++j)
    der.install(j, j + 1, comm(ref(j, d), ref(d, j + 1)), "5: upper diagonal");

  // Stage 6: remaining entries by commutator chains along both diagonals.
  for (int g = 2; g <= d - 1; ++g)
    for (int i = 1; i + g <= d; ++i) {
      if (!der.words().count({i, i + g}))
        der.install(i, i + g, comm(ref(i, i + g - 1), ref(i + g - 1, i + g)), "6: upper chains");
      if (!der.words().count({i + g, i}))
        der.install(i + g, i, comm(ref(i + g, i + g - 1), ref(i + g - 1, i)), "6: lower chains");
    }

  return der;
}

Report verify_commutation_relations(int d) {
  Report rep("commutators");
  rep.params()["d"] = d;
  bool disjoint_ok = true, chain_ok = true;
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j) {
      if (i == j) continue;
      IntMatrix tij = elementary_t(d, i, j);
      for (int k = 1; k <= d; ++k)
        for (int m = 1; m <= d; ++m) {
          if (k == m) continue;
          IntMatrix tkm = elementary_t(d, k, m);
          IntMatrix c = tij * tkm * tij.inverse() * tkm.inverse();
          if (j != k && i != m) {
            if (c != IntMatrix::identity(d)) disjoint_ok = false;
          }
          if (j == k && i != m && i != k && j != m) {
            if (c != elementary_t(d, i, m)) chain_ok = false;
          }
        }
    }
  rep.add("disjoint-pairs", disjoint_ok, "[T_ij, T_km] = I when j != k and i != m");
  rep.add("chained-pairs", chain_ok, "[T_ij, T_jk] = T_ik for distinct i, j, k");
  return rep;
}

}  // namespace itmlab

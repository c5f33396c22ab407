// Test-only oracles, kept independent of the library code paths they check.

#pragma once

#include "itmlab/galois.hpp"
#include "itmlab/itm.hpp"
#include "itmlab/rational.hpp"

#include <vector>

namespace oracles {

using itmlab::BigInt;
using itmlab::PolyZ;
using itmlab::Rat;

// Cofactor-expansion determinant, an independent route to the Bareiss result.
inline BigInt det_cofactor(const itmlab::IntMatrix& m) {
  int d = m.dim();
  if (d == 1) return m.at(0, 0);
  BigInt acc(0);
  for (int j = 0; j < d; ++j) {
    if (m.at(0, j) == 0) continue;
    itmlab::IntMatrix minor(d - 1);
    for (int i = 1; i < d; ++i) {
      int cc = 0;
      for (int c = 0; c < d; ++c) {
        if (c == j) continue;
        minor.at(i - 1, cc++) = m.at(i, c);
      }
    }
    BigInt term = m.at(0, j) * det_cofactor(minor);
    acc += (j % 2 == 0) ? term : -term;
  }
  return acc;
}

// Exact bisection for a sign change of p on [lo, hi]; the interval must
// bracket a single simple root.
inline Rat bisect_root(const PolyZ& p, Rat lo, Rat hi, int iterations = 80) {
  Rat flo = p.eval(lo);
  if (flo == 0) return lo;
  bool lo_neg = flo < 0;
  for (int i = 0; i < iterations; ++i) {
    Rat mid = (lo + hi) / 2;
    Rat fm = p.eval(mid);
    if (fm == 0) return mid;
    if ((fm < 0) == lo_neg)
      lo = mid;
    else
      hi = mid;
  }
  return (lo + hi) / 2;
}

// Largest real root of a polynomial with a positive dominant root < bound.
inline double perron_root(const PolyZ& p, double bound = 64.0) {
  Rat hi(static_cast<long long>(bound * 1024), 1024);
  while (p.eval(hi) <= 0) hi *= 2;  // dominant root: p eventually positive
  Rat lo = hi;
  while (p.eval(lo) > 0) lo /= 2;
  return itmlab::to_double(bisect_root(p, lo, hi));
}

// Brute-force attractor: intersect [0,1), T[0,1), ..., T^n[0,1) directly,
// with a standalone endpoint-pair representation.
using Pieces = std::vector<std::pair<Rat, Rat>>;

inline Pieces brute_image(const itmlab::ITM& m, const Pieces& in) {
  Pieces raw;
  for (const auto& br : m.branches())
    for (const auto& [a, b] : in) {
      Rat lo = a > br.left ? a : br.left;
      Rat hi = b < br.right ? b : br.right;
      if (lo < hi) raw.emplace_back(lo + br.translation, hi + br.translation);
    }
  // quadratic merge, deliberately naive
  Pieces out;
  while (!raw.empty()) {
    auto cur = raw.front();
    raw.erase(raw.begin());
    bool merged = true;
    while (merged) {
      merged = false;
      for (size_t i = 0; i < raw.size(); ++i)
        if (!(raw[i].second < cur.first || cur.second < raw[i].first)) {
          cur.first = cur.first < raw[i].first ? cur.first : raw[i].first;
          cur.second = cur.second > raw[i].second ? cur.second : raw[i].second;
          raw.erase(raw.begin() + i);
          merged = true;
          break;
        }
    }
    out.push_back(cur);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline Pieces brute_intersect(const Pieces& a, const Pieces& b) {
  Pieces out;
  for (const auto& [al, ar] : a)
    for (const auto& [bl, br] : b) {
      Rat lo = al > bl ? al : bl;
      Rat hi = ar < br ? ar : br;
      if (lo < hi) out.emplace_back(lo, hi);
    }
  std::sort(out.begin(), out.end());
  return out;
}

inline Pieces brute_attractor(const itmlab::ITM& m, int n) {
  Pieces power{{Rat(0), Rat(1)}};  // T^j [0,1)
  Pieces omega = power;
  for (int j = 1; j <= n; ++j) {
    power = brute_image(m, power);
    omega = brute_intersect(omega, power);
  }
  return omega;
}

}  // namespace oracles

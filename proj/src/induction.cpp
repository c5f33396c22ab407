#include "itmlab/induction.hpp"

#include <stdexcept>

namespace itmlab {

static void check_lambda(const std::vector<Rat>& lambda, int d) {
  if (d < 3) throw std::invalid_argument("need d >= 3");
  if (static_cast<int>(lambda.size()) != d) throw std::invalid_argument("length vector has wrong size");
  for (const auto& l : lambda)
    if (l < 0) throw std::invalid_argument("negative length");
}

InductionStep r_step(const std::vector<Rat>& lambda, int d) {
  check_lambda(lambda, d);
  InductionStep st;
  for (const auto& l : lambda)
    if (l == 0) return st;  // degenerate: Boundary

  Rat rest(0);
  for (int i = 1; i < d; ++i) rest += lambda[i];

  if (lambda[0] == rest || lambda[0] == lambda[d - 1]) return st;

  if (lambda[0] > rest) {
    st.case_tag = StepCase::Expand;
    st.length_matrix = d_step_matrix(d);
    st.height_matrix = vd_matrix(d);
    st.new_lambda = lambda;
    st.new_lambda[0] = lambda[0] - rest;
    return st;
  }
  if (lambda[0] < lambda[d - 1]) {
    st.case_tag = StepCase::Swap;
    st.length_matrix = c_step_matrix(d);
    st.height_matrix = vc_matrix(d);
    st.new_lambda.resize(d);
    for (int i = 0; i + 2 < d; ++i) st.new_lambda[i] = lambda[i + 1];
    st.new_lambda[d - 2] = lambda[0];
    st.new_lambda[d - 1] = lambda[d - 1] - lambda[0];
    return st;
  }
  // lambda_d < lambda_1 < lambda_2 + ... + lambda_d: finite-type exit.
  st.case_tag = StepCase::Reduce;
  st.new_lambda = lambda;
  return st;
}

ZStep z_step(const std::vector<Rat>& lambda, int d) {
  check_lambda(lambda, d);
  ZStep out;
  for (const auto& l : lambda)
    if (l == 0) return out;

  Rat rest(0);
  for (int i = 1; i < d; ++i) rest += lambda[i];
  if (rest == 0) return out;

  // Number of case-1 moves in closed form; q integral is a tie.
  Rat q = lambda[0] / rest;
  if (den(q) == 1) return out;
  BigInt c = floor_rat(q);

  Rat l1 = lambda[0] - Rat(c) * rest;
  if (l1 == lambda[d - 1]) return out;
  if (l1 > lambda[d - 1]) {
    out.outcome = StepCase::Reduce;
    out.k = c;  // completed case-1 moves before the exit
    return out;
  }
  std::vector<Rat> nl(d);
  for (int i = 0; i + 2 < d; ++i) nl[i] = lambda[i + 1];
  nl[d - 2] = l1;
  nl[d - 1] = lambda[d - 1] - l1;
  Rat total(0);
  for (const auto& v : nl) total += v;
  for (auto& v : nl) v /= total;
  out.outcome = StepCase::Swap;
  out.k = c + 1;
  out.new_lambda = std::move(nl);
  return out;
}

Itinerary itinerary(const std::vector<Rat>& lambda, int d, int n) {
  Itinerary it;
  std::vector<Rat> cur = lambda;
  for (int step = 1; step <= n; ++step) {
    ZStep zs = z_step(cur, d);
    if (zs.outcome == StepCase::Boundary) {
      it.exit = Itinerary::Boundary;
      it.exit_step = step;
      return it;
    }
    if (zs.outcome == StepCase::Reduce) {
      it.exit = Itinerary::Reduced;
      it.exit_step = step;
      return it;
    }
    it.ks.push_back(zs.k);
    cur = std::move(zs.new_lambda);
  }
  return it;
}

ConePoint params_from_itinerary(const KSequence& ks, int d, int depth) {
  if (depth < 0 || static_cast<size_t>(depth) > ks.size())
    throw std::invalid_argument("depth exceeds itinerary length");
  ConePoint out;
  if (depth == 0) {
    out.lambda.assign(d, Rat(1, static_cast<unsigned>(d)));
    out.error_bound = 1;
    return out;
  }
  IntMatrix m = z_matrix(d, ks[0]);
  for (int i = 1; i < depth; ++i) m = m * z_matrix(d, ks[i]);

  // Interior point: image of the simplex centroid, i.e. the column average.
  std::vector<Rat> pt(d, Rat(0));
  Rat total(0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      pt[i] += Rat(m.at(i, j));
      total += Rat(m.at(i, j));
    }
  for (auto& v : pt) v /= total;
  out.lambda = std::move(pt);

  // Cone diameter: max L-infinity distance between normalized columns.
  std::vector<std::vector<Rat>> cols(d, std::vector<Rat>(d));
  for (int j = 0; j < d; ++j) {
    Rat s(0);
    for (int i = 0; i < d; ++i) s += Rat(m.at(i, j));
    for (int i = 0; i < d; ++i) cols[j][i] = Rat(m.at(i, j)) / s;
  }
  Rat diam(0);
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b)
      for (int i = 0; i < d; ++i) {
        Rat dv = cols[a][i] - cols[b][i];
        if (dv < 0) dv = -dv;
        if (dv > diam) diam = dv;
      }
  out.error_bound = diam;
  return out;
}

SuspensionState initial_suspension(const std::vector<Rat>& lambda) {
  SuspensionState s;
  s.lambda = lambda;
  s.h.assign(lambda.size(), BigInt(1));
  return s;
}

SuspensionState height_step(const SuspensionState& s, const BigInt& k, int d) {
  if (k < 1) throw std::invalid_argument("need k >= 1");
  check_lambda(s.lambda, d);
  SuspensionState out;
  out.h = zt_matrix(d, k).apply(s.h);
  out.lambda = z_matrix(d, k).inverse().apply(s.lambda);
  for (const auto& l : out.lambda)
    if (l < 0) throw std::invalid_argument("itinerary does not match the length vector");
  return out;
}

Rat area(const SuspensionState& s) {
  Rat a(0);
  for (size_t i = 0; i < s.lambda.size(); ++i) a += s.lambda[i] * Rat(s.h[i]);
  return a;
}

}  // namespace itmlab

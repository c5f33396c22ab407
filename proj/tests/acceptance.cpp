// Acceptance harness: runs the ten release criteria end to end and prints one
// PASS/FAIL line per criterion.  Exit code 0 only when everything passes.

#include "itmlab/constructions.hpp"
#include "itmlab/galois.hpp"
#include "itmlab/induction.hpp"
#include "itmlab/intmatrix.hpp"
#include "itmlab/itm.hpp"
#include "itmlab/lyapunov.hpp"
#include "itmlab/sadic.hpp"
#include "itmlab/steinberg.hpp"
#include "itmlab/suites.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

using namespace itmlab;

namespace {

int failures = 0;

void criterion(int number, const char* text, const std::function<bool()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string error;
  try {
    ok = body();
  } catch (const std::exception& e) {
    error = e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s criterion-%d (%.2fs): %s%s%s\n", ok ? "PASS" : "FAIL", number, secs, text,
              error.empty() ? "" : " -- ", error.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

bool exact_galois_values() {
  if (discriminant(PolyZ::from_ints({1, -3, -1, 1})) != 148) return false;
  for (int k = 1; k <= 100; ++k) {
    PolyZ p = charpoly(a_matrix(3, k));
    BigInt formula = BigInt(4) * k * k * k + BigInt(k) * k + BigInt(18) * k - 23;
    if (discriminant(p) != formula) return false;
  }
  PolyZ q4 = charpoly(a_matrix(4, 2));
  if (discriminant(q4) != -643) return false;
  if (resolvent_cubic(q4) != PolyZ::from_ints({-5, -2, 0, 1})) return false;
  IntMatrix fwd = a_matrix(4, 1) * a_matrix(4, 2) * a_matrix(4, 3);
  IntMatrix rev = a_matrix(4, 3) * a_matrix(4, 2) * a_matrix(4, 1);
  return discriminant(charpoly(fwd)) == 916 && discriminant(charpoly(rev)) == 916;
}

bool conjugation_identities() {
  for (int d = 3; d <= 8; ++d) {
    IntMatrix j = j_matrix(d), jinv = j.inverse();
    for (int k = 1; k <= 50; ++k) {
      if (j * a_matrix(d, k).inverse() * jinv != z_matrix(d, k)) return false;
      if (zt_matrix(d, k) != a_matrix(d, k).transpose()) return false;
    }
  }
  for (int k = 1; k <= 100; ++k)
    if (!conjugation_check_d3(k).pass()) return false;
  return true;
}

bool pf_lemma() {
  Report rep = pf_constants(40);
  bool exists = rep.checks()[0].pass;
  int m = rep.checks()[0].data["smallest_m"].get<int>();
  bool pair_outcome = rep.checks()[1].data.contains("ratio_exceeds_2");
  std::printf("       pf: smallest m = %d; pair (15, 8997/4334) %s\n", m,
              rep.checks()[1].pass ? "holds" : "fails");
  return exists && pair_outcome;
}

bool column_growth() {
  std::mt19937_64 rng(20260810);
  for (int s = 0; s < 1000; ++s) {
    int len = 1 + static_cast<int>(rng() % 15);
    KSequence ks;
    for (int i = 0; i < len; ++i) ks.emplace_back(1 + rng() % 10);
    if (!verify_column_growth(ks).pass()) return false;
  }
  return true;
}

bool steinberg_generation() {
  for (int d = 3; d <= 6; ++d) {
    Derivation der = derive_steinberg(d);
    if (static_cast<int>(der.words().size()) != d * (d - 1)) return false;
    for (const auto& [key, w] : der.words())
      if (w.value != elementary_t(d, key.first, key.second)) return false;
    if (a_matrix(d, 2) * a_matrix(d, 1).inverse() != elementary_t(d, 1, d)) return false;
    IntMatrix lhs = a_matrix(d, 1) * elementary_t(d, 1, d) * a_matrix(d, 1).inverse();
    if (lhs != elementary_t(d, 2, d) * elementary_t(d, 2, 1).inverse()) return false;
    IntMatrix x = a_matrix(d, 1).inverse() * elementary_t(d, 1, d) * a_matrix(d, 1);
    if (x.at(d - 2, d - 2) != 2 || x.at(d - 2, d - 1) != 1 || x.at(d - 1, d - 2) != -1 ||
        x.at(d - 1, d - 1) != 0)
      return false;
  }
  return true;
}

bool lyapunov_oracles() {
  // periodic itinerary k = 2, d = 3: spectrum from the exact Perron data
  PolyZ pa = PolyZ::from_ints({1, -2, -1, 1});
  double r1 = oracles::perron_root(pa);
  double r2 = std::abs(to_double(oracles::bisect_root(pa, Rat(-2), Rat(-1))));
  double r3 = std::abs(to_double(oracles::bisect_root(pa, Rat(1, 4), Rat(1))));

  SamplingSpec two = SamplingSpec::periodic({2});
  LyapunovEstimate sp = spectrum(NumFamily::A, two, 3, 10000, 1);
  if (std::abs(sp.exponents[0] - std::log(r1)) > 1e-5) return false;
  if (std::abs(sp.exponents[1] - std::log(r2)) > 1e-5) return false;
  if (std::abs(sp.exponents[2] - std::log(r3)) > 1e-5) return false;
  if (std::abs(sp.exponent_sum) > 1e-8) return false;

  GapEstimate gap = exponent_gap(two, 3, 10000, 1);
  if (std::abs(gap.gap - std::log(2.24698 / 1.80194)) > 1e-4) return false;

  // measure-typical claim is replaced by the sampled-spec property
  for (int d : {3, 4}) {
    SamplingSpec spec = SamplingSpec::geometric(0.5, 20, 20260810);
    LyapunovEstimate mc = spectrum(NumFamily::A, spec, d, 100000, 20);
    double l2 = mc.exponents[1], ci = mc.ci95[1];
    std::printf("       lambda2(A_%d) = %.6f +- %.6f\n", d, l2, ci);
    if (!(l2 - ci > 0)) return false;
  }
  return true;
}

bool area_decay() {
  ConePoint cp = params_from_itinerary(KSequence(60, BigInt(2)), 3, 60);
  SuspensionState st = initial_suspension(cp.lambda);
  Rat prev = area(st);
  if (prev != 1) return false;
  double ratio = 0;
  for (int n = 0; n < 50; ++n) {
    st = height_step(st, 2, 3);
    Rat cur = area(st);
    if (!(cur < prev)) return false;
    ratio = to_double(cur / prev);
    prev = cur;
  }
  return std::abs(ratio - 1.80194 / 2.24698) < 1e-3;
}

bool constructions_check() {
  MinusOnePlan plan = build_minus_one(8);
  for (size_t n = 1; 2 * n < plan.tower_lengths.size(); ++n) {
    const auto& t = plan.tower_lengths[2 * n];
    if (t[0] % 2 != 0 || t[1] % 2 != 1 || t[2] % 2 != 0) return false;
  }
  for (const auto& blk : plan.blocks)
    if (blk.slack <= 0) return false;
  ResidualResult res = minus_one_residual(plan, 8, 10000, 20260810);
  std::printf("       minus-one: residual %.1e, excluded share %.5f\n", res.residual,
              to_double(res.excluded_relative));
  if (res.residual != 0.0) return false;
  if (res.excluded_relative > Rat(1, 64)) return false;

  IrrationalPlan ir = build_irrational(3);
  BigInt prev_q(0);
  for (int n = 0; n < 3; ++n) {
    const auto& blk = ir.blocks[n];
    if ((ir.q[n + 1] - prev_q) % ir.q[n] != 0) return false;       // congruence
    if (ir.q[n + 1] != blk.y * ir.q[n] + prev_q) return false;     // q-recursion
    if (blk.y < blk.k1 - 1) return false;
    if (blk.gcd_wv != 1 || blk.gcd_uv_next != 1) return false;     // coprimality
    prev_q = ir.q[n];
  }
  ResidualResult g = gamma_eigen_residual(ir, 2, 1000, 20260810);
  std::printf("       irrational: residual %.3e vs bound %.3e\n", g.residual,
              10 * to_double(g.error_bound));
  return g.residual <= 10 * to_double(g.error_bound);
}

bool itm_oracles() {
  // classification against the brute-force interval iteration oracle
  ITM bt = from_bt({Rat(2, 3), Rat(1, 3)});
  ClassifyResult res = classify(bt, 10);
  if (res.kind != ClassifyResult::FiniteType || res.depth != 1) return false;
  oracles::Pieces o1 = oracles::brute_attractor(bt, 1);
  oracles::Pieces o2 = oracles::brute_attractor(bt, 2);
  if (o1 != o2) return false;
  std::vector<IntervalSet::Interval> iv;
  for (const auto& [a, b] : o1) iv.push_back({a, b});
  if (IntervalSet(std::move(iv)) != res.omega) return false;

  // itinerary round trips
  std::mt19937_64 rng(20260810);
  for (int t = 0; t < 100; ++t) {
    KSequence ks;
    for (int i = 0; i < 10; ++i) ks.emplace_back(1 + rng() % 6);
    ConePoint cp = params_from_itinerary(ks, 3, 10);
    Itinerary it = itinerary(cp.lambda, 3, 10);
    if (it.exit != Itinerary::Completed || it.ks != ks) return false;
  }
  return true;
}

bool transfer_hypotheses() {
  // five desk-scale hypotheses; the Monte Carlo exponent and the generation
  // theorem are certified by criteria 6 and 5
  for (int d = 3; d <= 6; ++d)
    for (int k = 1; k <= 50; ++k) {
      BigInt dt = a_matrix(d, k).det();
      if (dt != 1 && dt != -1) return false;
    }
  for (int d : {3, 4}) {
    bool found = false;
    for (int m = d - 1; m <= 12 && !found; ++m) {
      Substitution s = substitution_power(chi(d, 2), m);
      if (is_left_proper(s) && abelianization(s).positive())
        found = strong_coincidence(s, 1).kind == Coincidence::Yes;
    }
    if (!found) return false;
  }
  for (int k = 1; k <= 1000; ++k) {
    BigInt ca = cnorm(a_matrix(3, k)), cz = cnorm(z_matrix(3, k));
    if (!(cz <= ca && ca < 2 * cz)) return false;
  }
  return true;
}

}  // namespace

int main() {
  criterion(1, "exact discriminants, resolvent and the 916 product", exact_galois_values);
  criterion(2, "conjugation identities for Z, B and the height cocycle", conjugation_identities);
  criterion(3, "Perron separation of A_3(2) and B_3(2) powers", pf_lemma);
  criterion(4, "column growth and recursions on 1000 random itineraries", column_growth);
  criterion(5, "Steinberg generator words for d = 3..6", steinberg_generation);
  criterion(6, "Lyapunov spectra: periodic oracle and sampled second exponent",
            lyapunov_oracles);
  criterion(7, "band complex area decay at the self-similar itinerary", area_decay);
  criterion(8, "explicit constructions and eigenfunction residuals", constructions_check);
  criterion(9, "attractor classification and itinerary round trips", itm_oracles);
  criterion(10, "checkable hypotheses of the weak mixing transfer", transfer_hypotheses);

  if (failures == 0)
    std::printf("all criteria passed\n");
  else
    std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

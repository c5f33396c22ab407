// Monte Carlo and periodic-orbit estimation of Lyapunov exponents for the
// cocycle families.
//
// The top exponent is the windowed growth rate of the max-column-L1 norm of
// the running product; the full spectrum comes from orthogonal-triangular
// refactorization of the product (transposed factors, which leaves the
// exponent set unchanged), accumulating the logs of the triangular diagonal.
// Estimates are deterministic for a fixed seed: every sample owns a derived
// RNG stream and results are merged in sample order, independent of the
// worker count.

#pragma once

#include "itmlab/rational.hpp"
#include "itmlab/report.hpp"

#include <cstdint>
#include <vector>

namespace itmlab {

struct SamplingSpec {
  enum Kind { Geometric, UniformRange, Periodic, Empirical } kind = Geometric;
  double p = 0.5;              // Geometric success probability
  int kmin = 1;
  int kmax = 20;               // truncation keeps log k integrable
  std::vector<int> pattern;    // Periodic / Empirical entries, cycled
  std::uint64_t seed = 0;

  static SamplingSpec geometric(double p, int kmax, std::uint64_t seed);
  static SamplingSpec uniform(int kmin, int kmax, std::uint64_t seed);
  static SamplingSpec periodic(std::vector<int> pattern);
  static SamplingSpec empirical(std::vector<int> ks);

  // The k fed to the cocycle at step t of the given sample.
  std::vector<int> draw(int n_steps, int sample_index) const;
  bool stochastic() const { return kind == Geometric || kind == UniformRange; }

  json to_json() const;
};

enum class NumFamily { A, B3, Z, Zt, Ainv };

NumFamily parse_family(const std::string& name);
std::string to_string(NumFamily f);

struct LyapunovEstimate {
  std::vector<double> exponents;  // descending
  std::vector<double> ci95;       // half-widths, per exponent
  double exponent_sum = 0;
  int n_steps = 0;
  int n_samples = 0;
  std::uint64_t seed = 0;

  json to_json() const;
};

LyapunovEstimate top_exponent(NumFamily f, const SamplingSpec& spec, int d, int n_steps,
                              int n_samples, int n_threads = 0);

LyapunovEstimate spectrum(NumFamily f, const SamplingSpec& spec, int d, int n_steps,
                          int n_samples, int n_threads = 0);

struct GapEstimate {
  double gap = 0;     // lambda_1(Z) - lambda_1(A), paired itineraries
  double ci95 = 0;
  bool degenerate_all_ones = false;  // flagged, not averaged in
};

GapEstimate exponent_gap(const SamplingSpec& spec, int d, int n_steps, int n_samples,
                         int n_threads = 0);

// lambda_2(A_d) > 0 via the two routes: positive top exponent of the inverse
// family, and lambda_1 + lambda_d < 0.
Report second_exponent_sign(const SamplingSpec& spec, int d, int n_steps, int n_samples,
                            int n_threads = 0);

}  // namespace itmlab

#include "itmlab/lyapunov.hpp"

#include "itmlab/intmatrix.hpp"

#include <atomic>
#include <cmath>
#include <cstring>
#include <map>
#include <random>
#include <stdexcept>
#include <thread>

namespace itmlab {

SamplingSpec SamplingSpec::geometric(double p, int kmax, std::uint64_t seed) {
  if (!(p > 0 && p < 1)) throw std::invalid_argument("need 0 < p < 1");
  SamplingSpec s;
  s.kind = Geometric;
  s.p = p;
  s.kmax = kmax;
  s.seed = seed;
  return s;
}

SamplingSpec SamplingSpec::uniform(int kmin, int kmax, std::uint64_t seed) {
  if (kmin < 1 || kmax < kmin) throw std::invalid_argument("bad range");
  SamplingSpec s;
  s.kind = UniformRange;
  s.kmin = kmin;
  s.kmax = kmax;
  s.seed = seed;
  return s;
}

SamplingSpec SamplingSpec::periodic(std::vector<int> pattern) {
  if (pattern.empty()) throw std::invalid_argument("empty pattern");
  for (int k : pattern)
    if (k < 1) throw std::invalid_argument("need k >= 1");
  SamplingSpec s;
  s.kind = Periodic;
  s.pattern = std::move(pattern);
  return s;
}

SamplingSpec SamplingSpec::empirical(std::vector<int> ks) {
  SamplingSpec s = periodic(std::move(ks));
  s.kind = Empirical;
  return s;
}

static std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::vector<int> SamplingSpec::draw(int n_steps, int sample_index) const {
  std::vector<int> ks(n_steps);
  if (kind == Periodic || kind == Empirical) {
    for (int t = 0; t < n_steps; ++t) ks[t] = pattern[t % pattern.size()];
    return ks;
  }
  std::mt19937_64 rng(splitmix64(seed ^ (0x5851F42D4C957F2Dull * (sample_index + 1))));
  auto unit = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };
  for (int t = 0; t < n_steps; ++t) {
    if (kind == Geometric) {
      int k = 1;
      while (unit() >= p && k < kmax) ++k;  // failures + 1, clamped at kmax
      ks[t] = k;
    } else {
      ks[t] = kmin + static_cast<int>(rng() % static_cast<std::uint64_t>(kmax - kmin + 1));
    }
  }
  return ks;
}

json SamplingSpec::to_json() const {
  json j;
  switch (kind) {
    case Geometric:
      j["distribution"] = "geometric";
      j["p"] = p;
      j["kmax"] = kmax;
      break;
    case UniformRange:
      j["distribution"] = "uniform";
      j["kmin"] = kmin;
      j["kmax"] = kmax;
      break;
    case Periodic:
      j["distribution"] = "periodic";
      j["pattern"] = pattern;
      break;
    case Empirical:
      j["distribution"] = "empirical";
      j["pattern"] = pattern;
      break;
  }
  j["seed"] = seed;
  return j;
}

NumFamily parse_family(const std::string& name) {
  if (name == "A" || name == "a") return NumFamily::A;
  if (name == "B" || name == "B3" || name == "b") return NumFamily::B3;
  if (name == "Z" || name == "z") return NumFamily::Z;
  if (name == "Zt" || name == "zt") return NumFamily::Zt;
  if (name == "Ainv" || name == "ainv") return NumFamily::Ainv;
  throw std::invalid_argument("unknown family: " + name);
}

std::string to_string(NumFamily f) {
  switch (f) {
    case NumFamily::A: return "A";
    case NumFamily::B3: return "B3";
    case NumFamily::Z: return "Z";
    case NumFamily::Zt: return "Zt";
    case NumFamily::Ainv: return "Ainv";
  }
  return "?";
}

json LyapunovEstimate::to_json() const {
  json j;
  j["exponents"] = exponents;
  j["ci95"] = ci95;
  j["exponent_sum"] = exponent_sum;
  j["n_steps"] = n_steps;
  j["n_samples"] = n_samples;
  j["seed"] = seed;
  return j;
}

namespace {

struct Mat {
  int d = 0;
  std::vector<double> e;
  explicit Mat(int dim) : d(dim), e(static_cast<size_t>(dim) * dim, 0.0) {}
  double& at(int i, int j) { return e[static_cast<size_t>(i) * d + j]; }
  double at(int i, int j) const { return e[static_cast<size_t>(i) * d + j]; }
};

Mat to_mat(const IntMatrix& m) {
  Mat out(m.dim());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) out.at(i, j) = to_double(m.at(i, j));
  return out;
}

Mat family_mat(NumFamily f, int d, int k) {
  switch (f) {
    case NumFamily::A: return to_mat(a_matrix(d, k));
    case NumFamily::B3: return to_mat(b3_matrix(k));
    case NumFamily::Z: return to_mat(z_matrix(d, k));
    case NumFamily::Zt: return to_mat(zt_matrix(d, k));
    case NumFamily::Ainv: return to_mat(a_matrix(d, k).inverse());
  }
  throw std::logic_error("unreachable");
}

// k -> matrix cache; k is small in every sampling spec.
class FamilyCache {
 public:
  FamilyCache(NumFamily f, int d) : f_(f), d_(d) {}
  const Mat& get(int k) {
    auto it = cache_.find(k);
    if (it == cache_.end()) it = cache_.emplace(k, family_mat(f_, d_, k)).first;
    return it->second;
  }

 private:
  NumFamily f_;
  int d_;
  std::map<int, Mat> cache_;
};

double col_norm(const Mat& m) {
  double best = 0;
  for (int j = 0; j < m.d; ++j) {
    double s = 0;
    for (int i = 0; i < m.d; ++i) s += std::fabs(m.at(i, j));
    best = std::max(best, s);
  }
  return best;
}

Mat mul(const Mat& a, const Mat& b) {
  Mat r(a.d);
  for (int i = 0; i < a.d; ++i)
    for (int k = 0; k < a.d; ++k) {
      double v = a.at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < a.d; ++j) r.at(i, j) += v * b.at(k, j);
    }
  return r;
}

int burn_in(int n_steps) { return std::min(1000, n_steps / 2); }

// Growth rate of the column norm of P_t = M(k_1)...M(k_t) over [burn, n].
double top_exponent_run(FamilyCache& fam, const std::vector<int>& ks) {
  int n = static_cast<int>(ks.size());
  int burn = burn_in(n);
  int d = fam.get(ks[0]).d;
  Mat p(d);
  for (int i = 0; i < d; ++i) p.at(i, i) = 1.0;
  double logscale = 0, log_at_burn = 0;
  if (burn == 0) log_at_burn = 0;  // log cnorm(I) = 0
  for (int t = 0; t < n; ++t) {
    p = mul(p, fam.get(ks[t]));
    if ((t + 1) % 25 == 0) {
      double s = col_norm(p);
      logscale += std::log(s);
      for (auto& v : p.e) v /= s;
    }
    if (t + 1 == burn) log_at_burn = logscale + std::log(col_norm(p));
  }
  double log_final = logscale + std::log(col_norm(p));
  return (log_final - log_at_burn) / (n - burn);
}

// One orthogonal-triangular refactorization step; returns log |diag|.
void qr_step(const Mat& m, Mat& q, std::vector<double>& logdiag) {
  int d = m.d;
  Mat b = mul(m, q);
  for (int col = 0; col < d; ++col) {
    for (int prev = 0; prev < col; ++prev) {
      double dot = 0;
      for (int i = 0; i < d; ++i) dot += b.at(i, prev) * b.at(i, col);
      for (int i = 0; i < d; ++i) b.at(i, col) -= dot * b.at(i, prev);
    }
    double nrm = 0;
    for (int i = 0; i < d; ++i) nrm += b.at(i, col) * b.at(i, col);
    nrm = std::sqrt(nrm);
    if (!(nrm > 1e-300)) throw std::runtime_error("rank loss in spectrum refactorization");
    logdiag[col] = std::log(nrm);
    for (int i = 0; i < d; ++i) b.at(i, col) /= nrm;
  }
  q = std::move(b);
}

// Spectrum of the right-infinite product via its transpose dynamics.
std::vector<double> spectrum_run(FamilyCache& fam, const std::vector<int>& ks, int d) {
  int n = static_cast<int>(ks.size());
  int burn = burn_in(n);
  Mat q(d);
  for (int i = 0; i < d; ++i) q.at(i, i) = 1.0;
  std::vector<double> acc(d, 0.0), logdiag(d, 0.0);
  Mat mt(d);
  for (int t = 0; t < n; ++t) {
    const Mat& m = fam.get(ks[t]);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) mt.at(i, j) = m.at(j, i);
    qr_step(mt, q, logdiag);
    if (t >= burn)
      for (int i = 0; i < d; ++i) acc[i] += logdiag[i];
  }
  for (auto& v : acc) v /= (n - burn);
  return acc;
}

// Runs one job per sample on a small worker pool; results land in sample
// order so the reduction is independent of the worker count.
template <typename Fn>
void for_each_sample(int n_samples, int n_threads, Fn&& fn) {
  if (n_threads <= 0) n_threads = static_cast<int>(std::thread::hardware_concurrency());
  n_threads = std::max(1, std::min(n_threads, n_samples));
  if (n_threads == 1) {
    for (int s = 0; s < n_samples; ++s) fn(s);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (int w = 0; w < n_threads; ++w)
    pool.emplace_back([&]() {
      for (int s = next.fetch_add(1); s < n_samples; s = next.fetch_add(1)) fn(s);
    });
  for (auto& th : pool) th.join();
}

struct MeanCi {
  double mean = 0, ci = 0;
};

MeanCi mean_ci(const std::vector<double>& xs) {
  MeanCi r;
  double n = static_cast<double>(xs.size());
  for (double x : xs) r.mean += x;
  r.mean /= n;
  if (xs.size() > 1) {
    double ss = 0;
    for (double x : xs) ss += (x - r.mean) * (x - r.mean);
    double sd = std::sqrt(ss / (n - 1));
    r.ci = 1.96 * sd / std::sqrt(n);
  }
  return r;
}

}  // namespace

LyapunovEstimate top_exponent(NumFamily f, const SamplingSpec& spec, int d, int n_steps,
                              int n_samples, int n_threads) {
  if (n_steps < 1 || n_samples < 1) throw std::invalid_argument("need steps and samples >= 1");
  std::vector<double> per_sample(n_samples);
  for_each_sample(n_samples, n_threads, [&](int s) {
    FamilyCache fam(f, d);
    per_sample[s] = top_exponent_run(fam, spec.draw(n_steps, s));
  });
  MeanCi mc = mean_ci(per_sample);
  LyapunovEstimate est;
  est.exponents = {mc.mean};
  est.ci95 = {mc.ci};
  est.exponent_sum = mc.mean;
  est.n_steps = n_steps;
  est.n_samples = n_samples;
  est.seed = spec.seed;
  return est;
}

LyapunovEstimate spectrum(NumFamily f, const SamplingSpec& spec, int d, int n_steps,
                          int n_samples, int n_threads) {
  if (n_steps < 1 || n_samples < 1) throw std::invalid_argument("need steps and samples >= 1");
  std::vector<std::vector<double>> per_sample(n_samples);
  for_each_sample(n_samples, n_threads, [&](int s) {
    FamilyCache fam(f, d);
    per_sample[s] = spectrum_run(fam, spec.draw(n_steps, s), d);
  });
  LyapunovEstimate est;
  est.n_steps = n_steps;
  est.n_samples = n_samples;
  est.seed = spec.seed;
  est.exponents.resize(d);
  est.ci95.resize(d);
  for (int i = 0; i < d; ++i) {
    std::vector<double> xs(n_samples);
    for (int s = 0; s < n_samples; ++s) xs[s] = per_sample[s][i];
    MeanCi mc = mean_ci(xs);
    est.exponents[i] = mc.mean;
    est.ci95[i] = mc.ci;
  }
  for (double e : est.exponents) est.exponent_sum += e;
  return est;
}

GapEstimate exponent_gap(const SamplingSpec& spec, int d, int n_steps, int n_samples,
                         int n_threads) {
  GapEstimate out;
  if (spec.kind == SamplingSpec::Periodic || spec.kind == SamplingSpec::Empirical) {
    bool all_ones = true;
    for (int k : spec.pattern) all_ones = all_ones && k == 1;
    if (all_ones) {
      // A_d(1) = Z_d(1): both cocycles coincide and the inequality is void.
      out.degenerate_all_ones = true;
      out.gap = 0;
      return out;
    }
  }
  std::vector<double> gaps(n_samples);
  for_each_sample(n_samples, n_threads, [&](int s) {
    std::vector<int> ks = spec.draw(n_steps, s);
    FamilyCache fa(NumFamily::A, d), fz(NumFamily::Z, d);
    gaps[s] = top_exponent_run(fz, ks) - top_exponent_run(fa, ks);
  });
  MeanCi mc = mean_ci(gaps);
  out.gap = mc.mean;
  out.ci95 = mc.ci;
  return out;
}

Report second_exponent_sign(const SamplingSpec& spec, int d, int n_steps, int n_samples,
                            int n_threads) {
  Report rep("second-exponent-sign");
  rep.params()["d"] = d;
  rep.params()["steps"] = n_steps;
  rep.params()["samples"] = n_samples;
  rep.params()["spec"] = spec.to_json();

  LyapunovEstimate spec_a = spectrum(NumFamily::A, spec, d, n_steps, n_samples, n_threads);
  LyapunovEstimate inv_top = top_exponent(NumFamily::Ainv, spec, d, n_steps, n_samples, n_threads);

  double l2 = spec_a.exponents[1], l2ci = spec_a.ci95[1];
  auto& c1 = rep.add("lambda2-positive", l2 - l2ci > 0,
                     "95% CI of lambda_2(A_d) excludes 0 from below");
  c1.data["lambda2"] = l2;
  c1.data["ci95"] = l2ci;

  auto& c2 = rep.add("inverse-family-top-positive",
                     inv_top.exponents[0] - inv_top.ci95[0] > 0,
                     "top exponent of the inverse family is positive, so lambda_d(A_d) < 0");
  c2.data["estimate"] = inv_top.exponents[0];
  c2.data["ci95"] = inv_top.ci95[0];

  double edge_sum = spec_a.exponents[0] + spec_a.exponents[d - 1];
  auto& c3 = rep.add("lambda1-plus-lambdad-negative", edge_sum < 0,
                     "lambda_1 + lambda_d < 0 forces lambda_2 > 0 when det = +-1");
  c3.data["lambda1_plus_lambdad"] = edge_sum;

  json spec_json = spec_a.to_json();
  rep.add("spectrum", true, "estimated spectrum of the A family").data = spec_json;
  return rep;
}

}  // namespace itmlab

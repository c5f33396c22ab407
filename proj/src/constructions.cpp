#include "itmlab/constructions.hpp"

#include "itmlab/intmatrix.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

namespace itmlab {

namespace {

BigInt ceil_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if (q * b != a && (a > 0) == (b > 0)) ++q;
  return q;
}

BigInt mod_positive(BigInt a, const BigInt& m) {
  a %= m;
  if (a < 0) a += m;
  return a;
}

BigInt mod_inverse(const BigInt& a, const BigInt& m) {
  BigInt old_r = mod_positive(a, m), r = m;
  BigInt old_s(1), s(0);
  while (r != 0) {
    BigInt qt = old_r / r;
    BigInt tmp = old_r - qt * r;
    old_r = r;
    r = tmp;
    tmp = old_s - qt * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw std::invalid_argument("not invertible");
  return mod_positive(old_s, m);
}

void advance_lengths(std::array<BigInt, 3>& uvw, const BigInt& k) {
  BigInt u = uvw[1];                        // |u'| = |v|
  BigInt v = uvw[2] + k * uvw[0];           // |v'| = |w| + k|u|
  BigInt w = uvw[2] + (k - 1) * uvw[0];     // |w'| = |w| + (k-1)|u|
  uvw = {u, v, w};
}

// Uniform big integer in [0, bound) from 64-bit chunks, rejection sampled.
BigInt uniform_bigint(std::mt19937_64& rng, const BigInt& bound) {
  if (bound <= 0) throw std::invalid_argument("empty range");
  size_t bits = 0;
  for (BigInt b = bound - 1; b > 0; b >>= 1) ++bits;
  if (bits == 0) return BigInt(0);
  while (true) {
    BigInt x(0);
    for (size_t got = 0; got < bits; got += 64) {
      x <<= 64;
      x |= BigInt(rng());
    }
    x >>= (64 - bits % 64) % 64;
    if (x < bound) return x;
  }
}

std::vector<Rat> representative_lambda(const KSequence& ks) {
  ConePoint cp = params_from_itinerary(ks, 3, static_cast<int>(ks.size()));
  Itinerary it = itinerary(cp.lambda, 3, static_cast<int>(ks.size()));
  if (it.exit != Itinerary::Completed || it.ks != ks)
    throw std::logic_error("representative parameter does not replay the itinerary");
  return cp.lambda;
}

// Sequentially drawn sample indices, evaluated on a worker pool; the final
// reduction is a max over per-point values, so the merge order is immaterial.
double parallel_point_max(const std::vector<BigInt>& indices,
                          const std::function<double(const BigInt&)>& eval) {
  int n_threads = static_cast<int>(std::thread::hardware_concurrency());
  n_threads = std::max(1, std::min<int>(n_threads, static_cast<int>(indices.size())));
  if (n_threads <= 1) {
    double worst = 0;
    for (const auto& idx : indices) worst = std::max(worst, eval(idx));
    return worst;
  }
  std::atomic<size_t> next{0};
  std::vector<double> per_thread(n_threads, 0.0);
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (int w = 0; w < n_threads; ++w)
    pool.emplace_back([&, w]() {
      try {
        for (size_t i = next.fetch_add(1); i < indices.size(); i = next.fetch_add(1))
          per_thread[w] = std::max(per_thread[w], eval(indices[i]));
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  double worst = 0;
  for (double v : per_thread) worst = std::max(worst, v);
  return worst;
}

}  // namespace

// --- TowerGeometry -----------------------------------------------------------

TowerGeometry::TowerGeometry(const KSequence& ks, int depth, const std::vector<Rat>& lambda)
    : depth_(depth) {
  if (depth < 0 || static_cast<size_t>(depth) > ks.size())
    throw std::invalid_argument("depth exceeds itinerary length");
  if (lambda.size() != 3) throw std::invalid_argument("expected d = 3 lengths");
  ks_.assign(ks.begin(), ks.begin() + depth);
  lengths_.resize(depth + 1);
  heights_.resize(depth + 1);
  shifts_.resize(depth + 1);
  left_.resize(depth + 1);
  lengths_[0] = lambda;
  heights_[0] = {BigInt(1), BigInt(1), BigInt(1)};
  for (int m = 1; m <= depth; ++m) {
    lengths_[m] = z_matrix(3, ks_[m - 1]).inverse().apply(lengths_[m - 1]);
    for (const auto& l : lengths_[m])
      if (l <= 0) throw std::logic_error("length vector leaves the positive cone");
    heights_[m] = zt_matrix(3, ks_[m - 1]).apply(heights_[m - 1]);
  }
  for (int m = 0; m <= depth; ++m) {
    Rat total = lengths_[m][0] + lengths_[m][1] + lengths_[m][2];
    left_[m] = 1 - total;
    // induced translations: branch 1 jumps over the rest, branch 3 wraps
    shifts_[m] = {lengths_[m][1] + lengths_[m][2], lengths_[m][2], lengths_[m][2] - total};
  }
}

Rat TowerGeometry::covered(int m) const {
  Rat a(0);
  for (int j = 0; j < 3; ++j) a += Rat(heights_[m][j]) * lengths_[m][j];
  return a;
}

TowerGeometry::Iv TowerGeometry::base_interval(int m, int tower) const {
  if (m < 0 || m > depth_ || tower < 1 || tower > 3) throw std::invalid_argument("bad index");
  Rat l = left_[m];
  for (int j = 1; j < tower; ++j) l += lengths_[m][j - 1];
  return {l, l + lengths_[m][tower - 1]};
}

TowerGeometry::Iv TowerGeometry::level_interval(int m, int tower, const BigInt& index) const {
  return descend(m, tower, index, base_interval(m, tower));
}

TowerGeometry::Iv TowerGeometry::descend(int m, int tower, BigInt index, Iv base) const {
  if (index < 0 || index >= heights_[m][tower - 1])
    throw std::invalid_argument("level index out of range");
  if (m == 0) return base;

  // Block decomposition over level m-1: tower 1 = (2); 2 = (3)(1)^k; 3 = (3)(1)^{k-1}.
  const BigInt& k = ks_[m - 1];
  std::vector<std::pair<int, BigInt>> blocks;
  if (tower == 1)
    blocks = {{2, BigInt(1)}};
  else if (tower == 2)
    blocks = {{3, BigInt(1)}, {1, k}};
  else
    blocks = {{3, BigInt(1)}, {1, k - 1}};

  Iv cur = base;
  for (const auto& [sub, count] : blocks) {
    if (count == 0) continue;
    const BigInt& h = heights_[m - 1][sub - 1];
    BigInt span = count * h;
    Iv sub_base = base_interval(m - 1, sub);
    if (index < span) {
      BigInt copies = index / h;
      BigInt offset = index % h;
      Iv shifted{cur.left + Rat(copies) * shifts_[m - 1][sub - 1],
                 cur.right + Rat(copies) * shifts_[m - 1][sub - 1]};
      if (!(sub_base.left <= shifted.left && shifted.right <= sub_base.right))
        throw std::logic_error("tower column escapes its base interval");
      return descend(m - 1, sub, offset, shifted);
    }
    index -= span;
    cur.left += Rat(count) * shifts_[m - 1][sub - 1];
    cur.right += Rat(count) * shifts_[m - 1][sub - 1];
  }
  throw std::logic_error("level index not located in the block decomposition");
}

// --- eigenvalue -1 plan -----------------------------------------------------

MinusOnePlan build_minus_one(int n_blocks, long long odd_choice) {
  if (n_blocks < 1) throw std::invalid_argument("need at least one block");
  if (odd_choice < 1 || odd_choice % 2 == 0) throw std::invalid_argument("odd_choice must be odd");

  MinusOnePlan plan;
  plan.n_blocks = n_blocks;
  plan.odd_choice = odd_choice;

  std::array<BigInt, 3> uvw{BigInt(1), BigInt(1), BigInt(1)};
  plan.tower_lengths.push_back(uvw);
  auto push_k = [&](const BigInt& k) {
    plan.ks.push_back(k);
    advance_lengths(uvw, k);
    plan.tower_lengths.push_back(uvw);
  };

  push_k(BigInt(odd_choice));      // k_1 odd
  push_k(BigInt(odd_choice + 1));  // k_2 even keeps |v_2| odd

  BigInt pow2(2);
  for (int n = 1; n <= n_blocks; ++n, pow2 <<= 1) {
    const BigInt &u = uvw[0], &v = uvw[1], &w = uvw[2];
    BigInt k_odd(odd_choice);  // k_{2n+2}
    BigInt rhs = pow2 * (w + k_odd * v);  // 2^n (|w_{2n}| + k_{2n+2} |v_{2n}|)
    BigInt k_grow = 1 + ceil_div(rhs + 1, u);  // minimal with (k-1)|u| > rhs
    MinusOneBlock blk;
    blk.n = n;
    blk.k_grow = k_grow;
    blk.k_odd = k_odd;
    blk.slack = (k_grow - 1) * u - rhs;
    if (blk.slack <= 0) throw std::logic_error("growth inequality violated");
    plan.blocks.push_back(blk);
    push_k(k_grow);
    push_k(k_odd);
  }

  // Parity ledger: |u_{2n}|, |w_{2n}| even and |v_{2n}| odd for n >= 1.
  for (int n = 1; 2 * n < static_cast<int>(plan.tower_lengths.size()); ++n) {
    const auto& t = plan.tower_lengths[2 * n];
    if (t[0] % 2 != 0 || t[2] % 2 != 0 || t[1] % 2 != 1)
      throw std::logic_error("parity invariant violated");
  }
  return plan;
}

json MinusOnePlan::to_json() const {
  json j;
  j["construction"] = "minus-one";
  j["n_blocks"] = n_blocks;
  j["odd_choice"] = odd_choice;
  json ks_json = json::array();
  for (const auto& k : ks) ks_json.push_back(k.str());
  j["ks"] = ks_json;
  json blocks_json = json::array();
  for (const auto& b : blocks) {
    json bj;
    bj["n"] = b.n;
    bj["k_grow"] = b.k_grow.str();
    bj["k_odd"] = b.k_odd.str();
    bj["growth_slack"] = b.slack.str();
    blocks_json.push_back(bj);
  }
  j["blocks"] = blocks_json;
  json lens = json::array();
  for (const auto& t : tower_lengths) lens.push_back({t[0].str(), t[1].str(), t[2].str()});
  j["tower_lengths"] = lens;
  j["parity_certificate"] = true;  // enforced in the builder
  return j;
}

// Share of levels of the level-(base+steps) towers that do not lie in the
// good part of their level-base u-blocks; all integer arithmetic on heights.
// good_per_block counts the certified levels inside one u-block.
static Rat excluded_block_share(const KSequence& ks, int base, int steps,
                                const std::vector<BigInt>& h_base, const BigInt& good_per_block) {
  IntMatrix m = IntMatrix::identity(3);
  for (int i = 0; i < steps; ++i) m = m * a_matrix(3, ks[base + i]);
  Rat worst(0);
  for (int tower = 0; tower < 3; ++tower) {
    BigInt total(0);
    for (int j = 0; j < 3; ++j) total += m.at(j, tower) * h_base[j];
    BigInt good = m.at(0, tower) * good_per_block;
    Rat share = Rat(total - good, total);
    if (share > worst) worst = share;
  }
  return worst;
}

ResidualResult minus_one_residual(const MinusOnePlan& plan, int n, long long n_test_points,
                                  std::uint64_t seed) {
  int level = 2 * n;
  if (n < 1 || n > plan.n_blocks) throw std::invalid_argument("block index out of range");

  std::vector<Rat> lambda = representative_lambda(plan.ks);
  TowerGeometry geo(plan.ks, level, lambda);
  ITM map = from_bruin(BruinParams{3, lambda});

  const auto& h = geo.heights(level);
  const auto& len = geo.lengths(level);
  Rat area = geo.covered(level);
  // Lebesgue measure of the uncertified set at this level: the u top level,
  // the v and w towers, and the part of [0,1) the towers no longer cover.
  Rat excluded_leb = len[0] + Rat(h[1]) * len[1] + Rat(h[2]) * len[2] + (1 - area);

  ResidualResult res;
  res.excluded_absolute = excluded_leb;
  // The construction's own measure: proportion of uncertified levels inside
  // the towers two steps deeper (certified = non-top levels of u-blocks).
  res.excluded_relative = excluded_block_share(plan.ks, level, 2, h, h[0] - 1);
  res.points = n_test_points;

  std::mt19937_64 rng(seed);
  BigInt level_range = h[0] - 1;  // certified levels 0 .. h_u - 2
  std::vector<BigInt> indices(n_test_points);
  for (auto& idx : indices) idx = uniform_bigint(rng, level_range);
  res.residual = parallel_point_max(indices, [&](const BigInt& idx) {
    TowerGeometry::Iv iv = geo.level_interval(level, 1, idx);
    Rat x = iv.mid();
    Rat tx = map.evaluate(x);
    TowerGeometry::Iv next = geo.level_interval(level, 1, idx + 1);
    if (!next.contains(tx)) throw std::logic_error("map does not climb the tower");
    double fx = (idx % 2 == 0) ? 1.0 : -1.0;
    double ftx = ((idx + 1) % 2 == 0) ? 1.0 : -1.0;
    return std::fabs(ftx + fx);
  });
  res.details["tower_level"] = level;
  res.details["u_height"] = h[0].str();
  res.details["excluded_relative"] = to_string(res.excluded_relative);
  return res;
}

// --- irrational rotation plan -------------------------------------------------

IrrationalPlan build_irrational(int n_blocks) {
  if (n_blocks < 1) throw std::invalid_argument("need at least one block");

  IrrationalPlan plan;
  plan.n_blocks = n_blocks;
  std::array<BigInt, 3> uvw{BigInt(1), BigInt(1), BigInt(1)};
  plan.tower_lengths.push_back(uvw);
  plan.q.push_back(BigInt(1));  // q_0 = |u_0|
  BigInt m_sum(0);

  auto push_k = [&](const BigInt& k) {
    plan.ks.push_back(k);
    advance_lengths(uvw, k);
    plan.tower_lengths.push_back(uvw);
  };

  BigInt prev_q(0);  // |u_{-3}| is the empty word: q_{-1} = 0
  BigInt pow2(1);
  for (int n = 0; n < n_blocks; ++n, pow2 <<= 1) {
    BigInt u = uvw[0], v = uvw[1], w = uvw[2];
    m_sum += w;  // m_{n+1} = |w_{3n}| + ... + |w_0|
    IrrationalBlock blk;
    blk.n = n;
    blk.residue = mod_positive(prev_q, u);

    // k_{3n+2}: minimal positive solution of k|v| + |w| = residue (mod |u|).
    BigInt k2;
    if (u == 1) {
      k2 = 1;
    } else {
      BigInt t = mod_positive(blk.residue - w, u);
      k2 = mod_positive(t * mod_inverse(v, u), u);
      if (k2 == 0) k2 = u;
    }
    blk.k2 = k2;

    // k_{3n+1}: minimal beyond the growth bound with gcd(|w_{3n+1}|, |v_{3n}|) = 1.
    BigInt rhs = pow2 * (w + k2 * v);
    BigInt k1 = 1 + ceil_div(rhs + 1, u);
    while (gcd(w + (k1 - 1) * u, v) != 1) ++k1;
    blk.k1 = k1;
    blk.slack = (k1 - 1) * u - rhs;
    blk.gcd_wv = gcd(w + (k1 - 1) * u, v);

    push_k(k1);
    push_k(k2);
    BigInt k3 = uvw[1];  // |w_{3n+1} v_{3n}^{k_{3n+2}}| = |v_{3n+2}| = |u_{3n+3}|
    blk.k3 = k3;
    push_k(k3);

    const BigInt& u_next = uvw[0];
    if (mod_positive(u_next, u) != blk.residue)
      throw std::logic_error("congruence certificate violated");
    BigInt y = (u_next - prev_q) / u;
    if (y * u + prev_q != u_next) throw std::logic_error("q-recursion division is inexact");
    if (y < k1 - 1) throw std::logic_error("y lower bound violated");
    blk.y = y;
    blk.gcd_uv_next = gcd(uvw[0], uvw[1]);
    if (blk.gcd_uv_next != 1) throw std::logic_error("coprimality certificate violated");

    plan.blocks.push_back(blk);
    plan.q.push_back(u_next);
    plan.y.push_back(y);
    plan.m.push_back(m_sum);
    prev_q = u;
  }
  return plan;
}

json IrrationalPlan::to_json() const {
  json j;
  j["construction"] = "irrational";
  j["n_blocks"] = n_blocks;
  json ks_json = json::array();
  for (const auto& k : ks) ks_json.push_back(k.str());
  j["ks"] = ks_json;
  json blocks_json = json::array();
  for (const auto& b : blocks) {
    json bj;
    bj["n"] = b.n;
    bj["k1"] = b.k1.str();
    bj["k2"] = b.k2.str();
    bj["k3"] = b.k3.str();
    bj["residue"] = b.residue.str();
    bj["y"] = b.y.str();
    bj["growth_slack"] = b.slack.str();
    bj["gcd_w_v"] = b.gcd_wv.str();
    bj["gcd_u_v_next"] = b.gcd_uv_next.str();
    blocks_json.push_back(bj);
  }
  j["blocks"] = blocks_json;
  json qs = json::array();
  for (const auto& v : q) qs.push_back(v.str());
  j["q"] = qs;
  json ys = json::array();
  for (const auto& v : y) ys.push_back(v.str());
  j["y"] = ys;
  json ms = json::array();
  for (const auto& v : m) ms.push_back(v.str());
  j["m"] = ms;
  json lens = json::array();
  for (const auto& t : tower_lengths) lens.push_back({t[0].str(), t[1].str(), t[2].str()});
  j["tower_lengths"] = lens;
  return j;
}

GammaApproximant gamma_approximant(const IrrationalPlan& plan, const Rat& precision) {
  if (plan.n_blocks < 2) throw std::invalid_argument("need at least two blocks");
  int b = plan.n_blocks;
  // Convergents of [0; y_1, ..., y_B].
  std::vector<BigInt> p(b + 1), q(b + 1);
  p[0] = 0;
  q[0] = 1;
  p[1] = 1;
  q[1] = plan.y[0];
  for (int i = 2; i <= b; ++i) {
    p[i] = plan.y[i - 1] * p[i - 1] + p[i - 2];
    q[i] = plan.y[i - 1] * q[i - 1] + q[i - 2];
  }
  for (int i = 0; i <= b; ++i)
    if (q[i] != plan.q[i]) throw std::logic_error("convergent denominators disagree with |u_{3n}|");

  auto error_at = [&](int i) -> Rat {
    if (i < b) return Rat(1, q[i] * q[i + 1]);
    return Rat(1, q[b] * (q[b] + q[b - 1]));  // worst continuation of the tail
  };
  if (error_at(b) > precision)
    throw std::invalid_argument("insufficient blocks for requested precision");
  int i = 1;
  while (error_at(i) > precision) ++i;  // shallowest convergent that certifies
  return {Rat(p[i], q[i]), error_at(i), i};
}

Report spacer_towers(const IrrationalPlan& plan, int n_max) {
  if (n_max < 1 || n_max > plan.n_blocks) throw std::invalid_argument("n_max out of range");
  Report rep("spacer-towers");
  rep.params()["n_max"] = n_max;

  bool z_ok = true, b_ok = true, c_ok = true, series_ok = true, m_ok = true;
  BigInt zl(1), bl(1), cl(1), dl(0);
  Rat prev_term(2), prev_m_term(2);
  for (int n = 0; n < n_max; ++n) {
    const auto& t3n = plan.tower_lengths[3 * n];
    const BigInt& k1 = plan.blocks[n].k1;
    const BigInt& k2 = plan.blocks[n].k2;
    BigInt spacer = t3n[2] + k2 * t3n[1];        // |s_n| = |w_{3n}| + k_{3n+2}|v_{3n}|
    zl = (k1 - 1) * zl + spacer;                 // z_{n+1} = z_n^{k1-1} s_n
    BigInt sp2 = n == 0 ? BigInt(0) : plan.q[n - 1];  // |s'_n| = |u_{3n-3}|
    bl = plan.y[n] * bl + sp2;                   // b_{n+1} = b_n^{y_{n+1}} s'_n
    BigInt c_next = plan.y[n] * cl + dl;         // c_{n+1} = c_n^{y_{n+1}} d_n
    dl = cl;
    cl = c_next;
    const BigInt& u_next = plan.q[n + 1];
    if (zl != u_next) z_ok = false;
    if (bl != u_next) b_ok = false;
    if (cl != u_next) c_ok = false;
    Rat term = Rat(spacer, u_next);
    if (spacer * (BigInt(1) << n) > u_next) series_ok = false;
    if (term >= prev_term) series_ok = false;
    prev_term = term;
    Rat m_term = Rat(plan.m[n], u_next);  // m_{n+1} / |u_{3n+3}|
    if (m_term >= prev_m_term) m_ok = false;
    prev_m_term = m_term;
  }
  rep.add("z-ledger", z_ok, "|z_n| = |u_{3n}| for the spacer recursion");
  rep.add("b-ledger", b_ok, "|b_n| = |u_{3n}| for the y-recursion with |u_{3n-3}| spacers");
  rep.add("cd-ledger", c_ok, "|c_n| = q_n for the rotation towers");
  rep.add("rank-one-series", series_ok,
          "(|w_{3n}| + k_{3n+2}|v_{3n}|)/|u_{3n+3}| <= 2^{-n} and decreasing");
  rep.add("m-series", m_ok, "m_{n+1}/|u_{3n+3}| decreasing");
  return rep;
}

ResidualResult gamma_eigen_residual(const IrrationalPlan& plan, int n, long long n_test_points,
                                    std::uint64_t seed) {
  if (n < 1 || n >= plan.n_blocks) throw std::invalid_argument("need 1 <= n < n_blocks");
  int level = 3 * n;

  std::vector<Rat> lambda = representative_lambda(plan.ks);
  TowerGeometry geo(plan.ks, level, lambda);
  ITM map = from_bruin(BruinParams{3, lambda});

  const auto& h = geo.heights(level);
  const auto& len = geo.lengths(level);
  if (h[0] != plan.q[n]) throw std::logic_error("tower height disagrees with q_n");
  const BigInt& m_n = plan.m[n - 1];  // m_n = |w_{3n-3}| + ... + |w_0|

  Rat area = geo.covered(level);
  // uncertified at this level: levels below m_n, the top level, the v / w
  // towers, and whatever the towers no longer cover
  Rat excluded_leb =
      Rat(m_n + 1) * len[0] + Rat(h[1]) * len[1] + Rat(h[2]) * len[2] + (1 - area);

  ResidualResult res;
  res.excluded_absolute = excluded_leb;
  // proportion of uncertified levels inside the next block's towers; the
  // phased good part of a u-block is [m_n, |u_{3n}| - 1)
  res.excluded_relative = excluded_block_share(plan.ks, level, 3, h, h[0] - m_n - 1);
  res.points = n_test_points;

  // Phases from the level-n convergent; multiplier from the deepest one.
  std::vector<BigInt> p(plan.n_blocks + 1), q(plan.n_blocks + 1);
  p[0] = 0;
  q[0] = 1;
  p[1] = 1;
  q[1] = plan.y[0];
  for (int i = 2; i <= plan.n_blocks; ++i) {
    p[i] = plan.y[i - 1] * p[i - 1] + p[i - 2];
    q[i] = plan.y[i - 1] * q[i - 1] + q[i - 2];
  }
  Rat err_n = Rat(1, q[n] * q[n + 1]);
  res.error_bound = err_n;
  int deep = plan.n_blocks;
  const double two_pi = 6.283185307179586476925286766559;
  auto phase = [&](const BigInt& j, const BigInt& pp, const BigInt& qq) {
    BigInt r = mod_positive(j * pp, qq);
    return two_pi * to_double(Rat(r, qq));
  };
  double mult_angle = phase(BigInt(1), p[deep], q[deep]);

  std::mt19937_64 rng(seed);
  BigInt j_range = h[0] - m_n - 1;  // levels m_n + j with j + 1 still phased
  if (j_range <= 0) throw std::logic_error("no certified levels at this depth");
  std::vector<BigInt> indices(n_test_points);
  for (auto& j : indices) j = uniform_bigint(rng, j_range);
  res.residual = parallel_point_max(indices, [&](const BigInt& j) {
    BigInt idx = m_n + j;
    TowerGeometry::Iv iv = geo.level_interval(level, 1, idx);
    Rat x = iv.mid();
    Rat tx = map.evaluate(x);
    TowerGeometry::Iv next = geo.level_interval(level, 1, idx + 1);
    if (!next.contains(tx)) throw std::logic_error("map does not climb the tower");
    double a0 = phase(j, p[n], q[n]);
    double a1 = phase(j + 1, p[n], q[n]);
    // |e^{i a1} - e^{i (mult + a0)}|
    double dr = std::cos(a1) - std::cos(mult_angle + a0);
    double di = std::sin(a1) - std::sin(mult_angle + a0);
    return std::sqrt(dr * dr + di * di);
  });
  res.details["tower_level"] = level;
  res.details["m_n"] = m_n.str();
  res.details["error_bound"] = to_string(err_n);
  return res;
}

std::vector<Rat> relative_tower_masses(const KSequence& ks, int level) {
  std::vector<Rat> lambda = representative_lambda(ks);
  TowerGeometry geo(ks, level, lambda);
  Rat area = geo.covered(level);
  std::vector<Rat> out(3);
  for (int j = 0; j < 3; ++j)
    out[j] = Rat(geo.heights(level)[j]) * geo.lengths(level)[j] / area;
  return out;
}

}  // namespace itmlab

#include "itmlab/sadic.hpp"

#include <map>
#include <set>
#include <stdexcept>

namespace itmlab {

static constexpr long long kMaterializeGuard = 2'000'000;

BigInt Word::length() const {
  BigInt n(0);
  for (const auto& r : runs) n += r.count;
  return n;
}

int Word::first_letter() const {
  if (runs.empty()) throw std::logic_error("empty word");
  return runs.front().letter;
}

void Word::append(int letter, const BigInt& count) {
  if (count == 0) return;
  if (count < 0) throw std::invalid_argument("negative run");
  if (!runs.empty() && runs.back().letter == letter)
    runs.back().count += count;
  else
    runs.push_back({letter, count});
}

std::vector<int> Word::letters() const {
  if (length() > kMaterializeGuard) throw std::length_error("word too long to materialize");
  std::vector<int> out;
  for (const auto& r : runs)
    for (BigInt i = 0; i < r.count; ++i) out.push_back(r.letter);
  return out;
}

Substitution::Substitution(int d, std::vector<Word> images) : d_(d), images_(std::move(images)) {
  if (d_ < 1 || static_cast<int>(images_.size()) != d_)
    throw std::invalid_argument("image count does not match alphabet");
  for (const auto& w : images_) {
    if (w.runs.empty()) throw std::invalid_argument("empty image");
    for (const auto& r : w.runs)
      if (r.letter < 1 || r.letter > d_) throw std::invalid_argument("letter out of range");
  }
}

Substitution chi(int d, const BigInt& k) {
  if (d < 3) throw std::invalid_argument("need d >= 3");
  if (k < 1) throw std::invalid_argument("need k >= 1");
  std::vector<Word> im(d);
  for (int a = 1; a <= d - 2; ++a) im[a - 1].append(a + 1, 1);
  im[d - 2].append(d, 1);
  im[d - 2].append(1, k);
  im[d - 1].append(d, 1);
  im[d - 1].append(1, k - 1);
  return Substitution(d, std::move(im));
}

Substitution identity_substitution(int d) {
  std::vector<Word> im(d);
  for (int a = 1; a <= d; ++a) im[a - 1].append(a, 1);
  return Substitution(d, std::move(im));
}

// w repeated count times; single-run words stay compact for any count.
static void append_repeated(Word& out, const Word& w, const BigInt& count) {
  if (count == 0) return;
  if (w.runs.size() == 1) {
    out.append(w.runs[0].letter, w.runs[0].count * count);
    return;
  }
  if (count > kMaterializeGuard) throw std::length_error("composition would explode");
  for (BigInt i = 0; i < count; ++i)
    for (const auto& r : w.runs) out.append(r.letter, r.count);
}

Substitution compose(const Substitution& s, const Substitution& t) {
  if (s.d() != t.d()) throw std::invalid_argument("alphabet mismatch");
  std::vector<Word> im(s.d());
  for (int a = 1; a <= s.d(); ++a) {
    for (const auto& r : t.image(a).runs) append_repeated(im[a - 1], s.image(r.letter), r.count);
  }
  return Substitution(s.d(), std::move(im));
}

Substitution substitution_power(const Substitution& s, int m) {
  if (m < 1) throw std::invalid_argument("need m >= 1");
  Substitution acc = s;
  for (int i = 1; i < m; ++i) acc = compose(s, acc);
  return acc;
}

IntMatrix abelianization(const Substitution& s) {
  IntMatrix m(s.d());
  for (int a = 1; a <= s.d(); ++a)
    for (const auto& r : s.image(a).runs) m.at(r.letter - 1, a - 1) += r.count;
  return m;
}

bool is_left_proper(const Substitution& s) {
  int first = s.image(1).first_letter();
  for (int a = 2; a <= s.d(); ++a)
    if (s.image(a).first_letter() != first) return false;
  return true;
}

Coincidence strong_coincidence(const Substitution& s, int max_power) {
  if (max_power < 1) throw std::invalid_argument("need max_power >= 1");
  if (is_left_proper(s)) return {Coincidence::Yes, 1, s.image(1).first_letter()};

  int d = s.d();
  for (int p = 1; p <= max_power; ++p) {
    Substitution sp = substitution_power(s, p);
    std::vector<std::vector<int>> words;
    try {
      for (int a = 1; a <= d; ++a) words.push_back(sp.image(a).letters());
    } catch (const std::length_error&) {
      return {Coincidence::Unknown, 0, 0};
    }
    for (int b = 1; b <= d; ++b) {
      // Per letter, the set of prefix (and suffix) abelianizations at
      // occurrences of b; a coincidence is a vector common to all letters.
      std::vector<std::set<std::vector<BigInt>>> pre(d), suf(d);
      for (int a = 0; a < d; ++a) {
        std::vector<BigInt> acc(d, BigInt(0));
        std::vector<BigInt> total(d, BigInt(0));
        for (int ch : words[a]) total[ch - 1] += 1;
        for (int ch : words[a]) {
          if (ch == b) {
            pre[a].insert(acc);
            std::vector<BigInt> rest(d);
            for (int i = 0; i < d; ++i) rest[i] = total[i] - acc[i];
            rest[b - 1] -= 1;
            suf[a].insert(rest);
          }
          acc[ch - 1] += 1;
        }
      }
      for (const auto& side : {pre, suf}) {
        std::set<std::vector<BigInt>> common = side[0];
        for (int a = 1; a < d && !common.empty(); ++a) {
          std::set<std::vector<BigInt>> next;
          for (const auto& v : common)
            if (side[a].count(v)) next.insert(v);
          common = std::move(next);
        }
        if (!common.empty()) return {Coincidence::Yes, p, b};
      }
    }
  }
  return {Coincidence::Unknown, 0, 0};
}

// --- tower names -------------------------------------------------------------

TowerFamily TowerFamily::build(const KSequence& ks, int n, int d, const BigInt& cutoff) {
  if (n < 0 || static_cast<size_t>(n) > ks.size())
    throw std::invalid_argument("level exceeds itinerary length");
  if (d < 3) throw std::invalid_argument("need d >= 3");
  TowerFamily tf;
  tf.d_ = d;
  tf.n_ = n;
  tf.cutoff_ = cutoff < kMaterializeGuard ? cutoff : BigInt(kMaterializeGuard);
  tf.ks_.assign(ks.begin(), ks.begin() + n);
  tf.heights_.resize(n + 1);
  tf.heights_[0].assign(d, BigInt(1));
  tf.blocks_.resize(n + 1);
  for (int m = 1; m <= n; ++m) {
    const BigInt& k = ks[m - 1];
    if (k < 1) throw std::invalid_argument("need k >= 1");
    // Name j at level m written over level m-1 names.
    auto& bl = tf.blocks_[m];
    bl.resize(d);
    for (int j = 1; j <= d - 2; ++j) bl[j - 1] = {{j + 1, BigInt(1)}};
    bl[d - 2] = {{d, BigInt(1)}, {1, k}};
    bl[d - 1] = {{d, BigInt(1)}};
    if (k > 1) bl[d - 1].push_back({1, k - 1});
    tf.heights_[m].resize(d);
    for (int j = 0; j < d; ++j) {
      BigInt h(0);
      for (const auto& r : bl[j]) h += r.count * tf.heights_[m - 1][r.letter - 1];
      tf.heights_[m][j] = h;
    }
  }
  return tf;
}

const std::vector<BigInt>& TowerFamily::heights(int m) const {
  if (m < 0 || m > n_) throw std::invalid_argument("level out of range");
  return heights_[m];
}

std::optional<std::vector<int>> TowerFamily::name(int m, int j) const {
  if (m < 0 || m > n_ || j < 1 || j > d_) throw std::invalid_argument("bad name index");
  if (heights_[m][j - 1] > cutoff_) return std::nullopt;
  if (m == 0) return std::vector<int>{j};
  std::vector<int> out;
  for (const auto& r : blocks_[m][j - 1]) {
    auto sub = name(m - 1, r.letter);
    for (BigInt c = 0; c < r.count; ++c) out.insert(out.end(), sub->begin(), sub->end());
  }
  return out;
}

int TowerFamily::letter_at(int m, int j, const BigInt& index) const {
  if (index < 0 || index >= heights_[m][j - 1]) throw std::invalid_argument("index out of range");
  if (m == 0) return j;
  BigInt i = index;
  for (const auto& r : blocks_[m][j - 1]) {
    const BigInt& h = heights_[m - 1][r.letter - 1];
    BigInt span = r.count * h;
    if (i < span) return letter_at(m - 1, r.letter, i % h);
    i -= span;
  }
  throw std::logic_error("index not located");
}

BigInt TowerFamily::common_prefix(int m, const BigInt& cap) const {
  BigInt limit = heights_[m][0];
  for (int j = 1; j < d_; ++j) limit = std::min(limit, heights_[m][j]);
  limit = std::min(limit, cap);
  BigInt i(0);
  for (; i < limit; ++i) {
    int first = letter_at(m, 1, i);
    bool same = true;
    for (int j = 2; j <= d_ && same; ++j) same = letter_at(m, j, i) == first;
    if (!same) break;
  }
  return i;
}

TowerFamily tower_names(const KSequence& ks, int n, const BigInt& cutoff, int d) {
  return TowerFamily::build(ks, n, d, cutoff);
}

Rat veech_residual(const KSequence& ks, const Rat& t, int n, int d) {
  if (n < 0 || static_cast<size_t>(n) > ks.size())
    throw std::invalid_argument("level exceeds itinerary length");
  std::vector<BigInt> h(d, BigInt(1));
  for (int m = 0; m < n; ++m) h = zt_matrix(d, ks[m]).apply(h);
  Rat worst(0);
  for (const auto& hi : h) {
    // distance from t*hi to the nearest integer, exactly
    BigInt p = num(t) * hi, q = den(t);
    BigInt r = p % q;
    if (r < 0) r += q;
    Rat frac(r, q);
    Rat complement = Rat(1) - frac;
    Rat dist = frac < complement ? frac : complement;
    if (dist > worst) worst = dist;
  }
  return worst;
}

BalancedReport balanced_times(const KSequence& ks, int n_max, const Rat& mass_eps,
                              const Rat& share_eps) {
  if (n_max < 0 || static_cast<size_t>(n_max) > ks.size())
    throw std::invalid_argument("n_max exceeds itinerary length");
  BalancedReport out;
  int full = static_cast<int>(ks.size());
  TowerFamily tf = TowerFamily::build(ks, full, 3, BigInt(kMaterializeGuard));

  for (int n = 0; n <= n_max; ++n) {
    // Tower masses in the sense of the stacked structure: the proportion of
    // level-n tower-j blocks among the levels of the deepest u tower.  This
    // is the measure the balancing condition speaks about; plain Lebesgue
    // mass at level n would ignore the coverage lost by deeper induction.
    IntMatrix refine = IntMatrix::identity(3);
    for (int i = n; i < full; ++i) refine = refine * a_matrix(3, ks[i]);
    const auto& h = tf.heights(n);
    BigInt total(0);
    std::vector<BigInt> levels(3);
    for (int j = 0; j < 3; ++j) {
      levels[j] = refine.at(j, 0) * h[j];
      total += levels[j];
    }
    bool ok = true;
    for (int j = 0; j < 3; ++j)
      if (Rat(levels[j]) < mass_eps * Rat(total)) ok = false;
    if (ok && share_eps > 0 && n > 0) {
      BigInt minh = std::min({h[0], h[1], h[2]});
      // cap slightly above the required share so hitting it is a pass
      Rat need = share_eps * Rat(minh);
      BigInt cap = floor_rat(need) + 1;
      if (cap > kMaterializeGuard) {
        out.share_certified = false;
        ok = false;
      } else {
        BigInt lcp = tf.common_prefix(n, cap);
        if (Rat(lcp) < need) ok = false;
      }
    }
    if (ok) out.balanced_levels.push_back(n);
  }
  return out;
}

}  // namespace itmlab

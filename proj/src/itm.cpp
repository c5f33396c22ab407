#include "itmlab/itm.hpp"

#include <algorithm>
#include <stdexcept>

namespace itmlab {

bool BruinParams::valid() const {
  if (d < 3 || static_cast<int>(lambda.size()) != d) return false;
  Rat sum(0);
  for (const auto& l : lambda) {
    if (l < 0) return false;
    sum += l;
  }
  return sum == 1;
}

IntervalSet::IntervalSet(std::vector<Interval> parts) {
  for (auto& p : parts) {
    if (p.left < 0 || p.right > 1) throw std::invalid_argument("interval outside [0,1)");
    if (p.left < p.right) parts_.push_back(p);
  }
  std::sort(parts_.begin(), parts_.end(),
            [](const Interval& a, const Interval& b) { return a.left < b.left; });
  std::vector<Interval> merged;
  for (const auto& p : parts_) {
    if (!merged.empty() && p.left <= merged.back().right)
      merged.back().right = std::max(merged.back().right, p.right);
    else
      merged.push_back(p);
  }
  parts_ = std::move(merged);
}

IntervalSet IntervalSet::full() { return IntervalSet({{Rat(0), Rat(1)}}); }

Rat IntervalSet::total_length() const {
  Rat s(0);
  for (const auto& p : parts_) s += p.right - p.left;
  return s;
}

bool IntervalSet::contains(const Rat& x) const {
  for (const auto& p : parts_)
    if (p.left <= x && x < p.right) return true;
  return false;
}

IntervalSet IntervalSet::intersect(const IntervalSet& o) const {
  std::vector<Interval> out;
  size_t i = 0, j = 0;
  while (i < parts_.size() && j < o.parts_.size()) {
    const auto& a = parts_[i];
    const auto& b = o.parts_[j];
    Rat lo = std::max(a.left, b.left), hi = std::min(a.right, b.right);
    if (lo < hi) out.push_back({lo, hi});
    if (a.right < b.right)
      ++i;
    else
      ++j;
  }
  return IntervalSet(std::move(out));
}

json IntervalSet::to_json() const {
  json arr = json::array();
  for (const auto& p : parts_) arr.push_back({to_string(p.left), to_string(p.right)});
  return arr;
}

ITM::ITM(std::vector<Branch> branches, bool degenerate)
    : branches_(std::move(branches)), degenerate_(degenerate) {
  if (branches_.empty()) throw std::invalid_argument("no branches");
  std::sort(branches_.begin(), branches_.end(),
            [](const Branch& a, const Branch& b) { return a.left < b.left; });
  Rat cursor(0);
  for (const auto& b : branches_) {
    if (b.left != cursor) throw std::invalid_argument("branches do not partition [0,1)");
    if (b.right <= b.left) throw std::invalid_argument("empty branch");
    if (b.left + b.translation < 0 || b.right + b.translation > 1)
      throw std::invalid_argument("branch image leaves [0,1)");
    cursor = b.right;
  }
  if (cursor != 1) throw std::invalid_argument("branches do not partition [0,1)");
}

int ITM::branch_index(const Rat& x) const {
  if (x < 0 || x >= 1) throw std::invalid_argument("point outside [0,1)");
  int lo = 0, hi = static_cast<int>(branches_.size()) - 1;
  while (lo < hi) {
    int mid = (lo + hi + 1) / 2;
    if (branches_[mid].left <= x)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

Rat ITM::evaluate(const Rat& x) const { return x + branches_[branch_index(x)].translation; }

IntervalSet ITM::image(const IntervalSet& s) const {
  std::vector<IntervalSet::Interval> out;
  for (const auto& b : branches_)
    for (const auto& p : s.parts()) {
      Rat lo = std::max(b.left, p.left), hi = std::min(b.right, p.right);
      if (lo < hi) out.push_back({lo + b.translation, hi + b.translation});
    }
  return IntervalSet(std::move(out));
}

ITM from_bt(const BTParams& p) {
  if (!p.valid()) throw std::invalid_argument("parameters outside U_2");
  std::vector<ITM::Branch> br;
  bool degenerate = false;
  auto push = [&](const Rat& l, const Rat& r, const Rat& t) {
    if (l < r)
      br.push_back({l, r, t});
    else
      degenerate = true;
  };
  push(Rat(0), 1 - p.alpha, p.alpha);
  push(1 - p.alpha, 1 - p.beta, p.beta);
  push(1 - p.beta, Rat(1), p.beta - 1);
  return ITM(std::move(br), degenerate);
}

ITM from_bruin(const BruinParams& p) {
  if (!p.valid()) throw std::invalid_argument("lambda is not in the simplex");
  // alpha_i = lambda_{i+1} + ... + lambda_d
  std::vector<Rat> alpha(p.d);  // alpha[0] unused; alpha[i] for 1..d-1
  Rat tail(0);
  for (int i = p.d - 1; i >= 1; --i) {
    tail += p.lambda[i];
    alpha[i] = tail;
  }
  std::vector<ITM::Branch> br;
  bool degenerate = false;
  auto push = [&](const Rat& l, const Rat& r, const Rat& t) {
    if (l < r)
      br.push_back({l, r, t});
    else
      degenerate = true;
  };
  push(Rat(0), 1 - alpha[1], alpha[1]);
  for (int i = 2; i < p.d; ++i) push(1 - alpha[i - 1], 1 - alpha[i], alpha[i]);
  push(1 - alpha[p.d - 1], Rat(1), alpha[p.d - 1] - 1);
  return ITM(std::move(br), degenerate);
}

std::vector<Rat> bt_lambda(const BTParams& p) {
  return {1 - p.alpha, p.alpha - p.beta, p.beta};
}

IntervalSet attractor(const ITM& m, int n) {
  if (n < 0) throw std::invalid_argument("need n >= 0");
  // T[0,1) is contained in [0,1), so the intersection telescopes to T^n[0,1).
  IntervalSet omega = IntervalSet::full();
  for (int i = 0; i < n; ++i) omega = m.image(omega);
  return omega;
}

ClassifyResult classify(const ITM& m, int max_depth) {
  if (max_depth < 1) throw std::invalid_argument("need max_depth >= 1");
  IntervalSet omega = IntervalSet::full();
  for (int n = 0; n < max_depth; ++n) {
    IntervalSet next = m.image(omega);
    if (next == omega) return {ClassifyResult::FiniteType, n, omega};
    omega = std::move(next);
  }
  return {ClassifyResult::Unresolved, max_depth, omega};
}

}  // namespace itmlab

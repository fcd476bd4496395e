#include "wplab/multi_index.hpp"

#include <algorithm>
#include <numeric>

#include "wplab/error.hpp"

namespace wplab {

MultiIndex::MultiIndex(std::vector<int> exponents) : exps_(std::move(exponents)) {
  for (int e : exps_) {
    if (e < 0) throw InvalidArgument("negative exponent in multi-index");
  }
  degree_ = std::accumulate(exps_.begin(), exps_.end(), 0);
}

MultiIndex::MultiIndex(std::initializer_list<int> exponents) : MultiIndex(std::vector<int>(exponents)) {}

MultiIndex MultiIndex::unit(int d, int var) {
  std::vector<int> e(static_cast<std::size_t>(d), 0);
  e.at(static_cast<std::size_t>(var)) = 1;
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (dim() != other.dim()) throw InvalidArgument("multi-index dimension mismatch");
  MultiIndex out = *this;
  for (std::size_t i = 0; i < exps_.size(); ++i) out.exps_[i] += other.exps_[i];
  out.degree_ = degree_ + other.degree_;
  return out;
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
  if (!other.divides(*this)) throw InvalidArgument("multi-index difference would be negative");
  MultiIndex out = *this;
  for (std::size_t i = 0; i < exps_.size(); ++i) out.exps_[i] -= other.exps_[i];
  out.degree_ = degree_ - other.degree_;
  return out;
}

bool MultiIndex::divides(const MultiIndex& other) const {
  if (dim() != other.dim()) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

double MultiIndex::multinomial() const {
  // Product of binomials C(e_1 + ... + e_i, e_i); every partial product is an integer.
  double result = 1.0;
  int running = 0;
  for (int e : exps_) {
    for (int j = 1; j <= e; ++j) {
      ++running;
      result = result * running / j;
    }
  }
  return result;
}

std::strong_ordering MultiIndex::operator<=>(const MultiIndex& other) const {
  if (auto c = degree_ <=> other.degree_; c != 0) return c;
  if (auto c = exps_.size() <=> other.exps_.size(); c != 0) return c;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] != other.exps_[i]) return other.exps_[i] <=> exps_[i];
  }
  return std::strong_ordering::equal;
}

std::size_t MultiIndexHash::operator()(const MultiIndex& a) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (int e : a.exponents()) {
    h ^= static_cast<std::size_t>(e) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::size_t graded_count(int d, int n) {
  if (n < 0) return 0;
  // C(n+d, d) built incrementally; each step stays integral.
  std::size_t c = 1;
  for (int i = 1; i <= d; ++i) c = c * static_cast<std::size_t>(n + i) / static_cast<std::size_t>(i);
  return c;
}

namespace {

// Appends all exponent tuples of total degree `remaining` for variables [pos, d),
// with earlier variables taking larger exponents first.
void fill_degree(std::vector<int>& cur, std::size_t pos, int remaining, std::vector<MultiIndex>& out) {
  if (pos + 1 == cur.size()) {
    cur[pos] = remaining;
    out.emplace_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[pos] = e;
    fill_degree(cur, pos + 1, remaining - e, out);
  }
  cur[pos] = 0;
}

}  // namespace

std::vector<MultiIndex> enumerate_multi_indices(int d, int n) {
  if (d < 1) throw InvalidArgument("dimension must be positive");
  std::vector<MultiIndex> out;
  if (n < 0) return out;
  out.reserve(graded_count(d, n));
  std::vector<int> cur(static_cast<std::size_t>(d), 0);
  for (int deg = 0; deg <= n; ++deg) fill_degree(cur, 0, deg, out);
  return out;
}

}  // namespace wplab

#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "mql/ffield.hpp"

namespace mql {

// A point of P^n(F_q) in normal form: the first nonzero coordinate is 1.
class ProjectivePoint {
 public:
  ProjectivePoint(Field field, std::vector<Index> coords);

  static ProjectivePoint from_ints(const Field& field, std::initializer_list<long long> coords);
  static ProjectivePoint from_elements(std::span<const FieldElement> coords);

  const Field& field() const noexcept { return field_; }
  const std::vector<Index>& coords() const noexcept { return coords_; }
  std::size_t size() const noexcept { return coords_.size(); }
  Index operator[](std::size_t i) const { return coords_[i]; }
  FieldElement element(std::size_t i) const { return {field_, coords_[i]}; }
  std::vector<FieldElement> elements() const;
  std::size_t nonzero_count() const;
  std::string to_string() const;

  friend bool operator==(const ProjectivePoint& a, const ProjectivePoint& b) {
    return a.coords_ == b.coords_ && a.field_ == b.field_;
  }
  friend std::strong_ordering operator<=>(const ProjectivePoint& a, const ProjectivePoint& b) {
    return a.coords_ <=> b.coords_;
  }

 private:
  Field field_;
  std::vector<Index> coords_;
};

// In-place normalization of a nonzero coordinate vector.
void normalize(const Field& field, std::vector<Index>& coords);

// #P^n(F_q) = (q^{n+1} - 1) / (q - 1).
std::uint64_t projective_point_count(std::uint64_t q, std::size_t n);

// Visits the normalized representatives of P^n(F_q) with global positions in
// [begin, end).  Positions run through the chart "x0 = 1" first, then
// "x0 = 0, x1 = 1", and so on; within a chart the last coordinate varies
// fastest.  fn receives the coordinate vector by const reference.
template <class Fn>
void for_each_normalized(std::uint64_t q, std::size_t n, std::uint64_t begin, std::uint64_t end, Fn&& fn) {
  std::vector<Index> x(n + 1, 0);
  std::uint64_t block_start = 0;
  for (std::size_t lead = 0; lead <= n && block_start < end; ++lead) {
    std::uint64_t block = 1;
    for (std::size_t i = lead + 1; i <= n; ++i) block *= q;
    const std::uint64_t block_end = block_start + block;
    if (block_end > begin) {
      const std::uint64_t lo = std::max(begin, block_start);
      const std::uint64_t hi = std::min(end, block_end);
      std::fill(x.begin(), x.end(), Index{0});
      x[lead] = 1;
      std::uint64_t offset = lo - block_start;
      for (std::size_t i = n; i > lead; --i) {
        x[i] = offset % q;
        offset /= q;
      }
      for (std::uint64_t pos = lo; pos < hi; ++pos) {
        fn(static_cast<const std::vector<Index>&>(x));
        for (std::size_t i = n; i > lead; --i) {
          if (++x[i] < q) break;
          x[i] = 0;
        }
      }
    }
    block_start = block_end;
  }
}

// Splits [0, total) into contiguous chunks, one per worker, and returns the
// sum of chunk(begin, end) in chunk order.
template <class T, class Chunk>
T parallel_sum(std::uint64_t total, unsigned threads, Chunk&& chunk) {
  threads = std::max(1u, threads);
  if (threads == 1 || total < 2) return chunk(std::uint64_t{0}, total);
  const std::uint64_t workers = std::min<std::uint64_t>(threads, total);
  std::vector<T> partial(workers, T{});
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::uint64_t w = 0; w < workers; ++w) {
    const std::uint64_t lo = total * w / workers;
    const std::uint64_t hi = total * (w + 1) / workers;
    pool.emplace_back([&partial, &chunk, w, lo, hi] { partial[w] = chunk(lo, hi); });
  }
  for (auto& t : pool) t.join();
  T sum{};
  for (auto& v : partial) sum += v;
  return sum;
}

}  // namespace mql

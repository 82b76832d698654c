#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mql/families.hpp"

namespace mql {

enum class CountAlgo { Naive, Table };

std::string_view to_string(CountAlgo algo) noexcept;
std::optional<CountAlgo> parse_count_algo(std::string_view s) noexcept;

inline constexpr int kCountRecordVersion = 1;
// Fast paths keep a q x q byte table; 8192^2 bytes = 64 MiB.
inline constexpr std::uint64_t kTableFieldCap = 8192;
inline constexpr double kNaiveWorkCap = 1e10;

struct CountRecord {
  FamilyId family = FamilyId::QuinticX;
  std::string params;
  std::uint64_t p = 0;
  int k = 1;
  std::uint64_t q = 0;
  std::uint64_t count = 0;  // projective F_q-points
  CountAlgo algo = CountAlgo::Naive;
  std::uint64_t elapsed_ms = 0;
  int version = kCountRecordVersion;

  friend bool operator==(const CountRecord&, const CountRecord&) = default;
};

struct CountTask {
  FamilyInstance instance;
  std::optional<CountAlgo> algo;  // unset: table when the family has one
  unsigned threads = 1;
};

// Enumerates normalized representatives of P^n(F_q) and tests every equation.
CountRecord count_naive(const FamilyInstance& instance, unsigned threads = 1);

// #X_mu(F_q) through R[A][B] = #{x0 : x0^5 + A x0 + B = 0}.
CountRecord count_x_table(const FieldElement& mu, unsigned threads = 1);

// #Y_mu(F_q) through S[T][P] = #{x0 : (x0 + T)^5 = (5 mu)^5 P x0}.  When
// (5 mu)^5 = 0 the equation is a 5-fold hyperplane and the naive path is used.
CountRecord count_y_table(const FieldElement& mu, unsigned threads = 1);

CountRecord run_count(const CountTask& task);

// One JSON object per line with exactly the keys
// family, params, p, k, count, algo, elapsed_ms, version.
std::string to_cache_line(const CountRecord& record);
// Throws Error(kCacheCorrupt) on anything malformed.
CountRecord parse_cache_line(std::string_view line);

struct CachedCount {
  CountRecord record;
  bool hit = false;
  std::vector<std::string> warnings;  // one per corrupt cache line
};

// Looks the task up by (family, params, p, k, version); on a miss computes
// and appends.  A corrupt cache is reported and bypassed for the lookup.
CachedCount count_cached(const CountTask& task, const std::filesystem::path& cache_path);

}  // namespace mql

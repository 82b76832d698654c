#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "mql/counting.hpp"

namespace mql {

// Frobenius traces on H^3 of the resolved varieties, recovered from point counts:
//   X:  q^3 + 25q^2 - 100q + 1 - #X  (q = 1 mod 5)
//       q^3 +   q^2        + 1 - #X  (q = 4 mod 5)
//       q^3 +   q^2 +   2q + 1 - #X  (q = 2, 3 mod 5)
//   Y:  q^3 +   q^2        + 1 - #Y  (q = 1, 4 mod 5)
//       q^3 +   q^2 +   2q + 1 - #Y  (q = 2, 3 mod 5)
// Prime powers q = p^k (k > 1) are accepted only for q = 1, 4 mod 5.
long long trace_x(std::uint64_t q, int residue, std::uint64_t count);
long long trace_y(std::uint64_t q, int residue, std::uint64_t count);

// a^2 <= 4 q^3
bool weil_bound_holds(long long a, std::uint64_t q);

struct TraceRecord {
  std::uint64_t p = 0;
  int residue = 0;
  std::uint64_t count_x = 0;
  std::uint64_t count_y = 0;
  long long ap_x = 0;
  long long ap_y = 0;
  bool weil_ok = false;
  bool match_ok = false;
};

struct TraceOptions {
  std::optional<std::filesystem::path> cache;  // counts go through count_cached when set
  std::optional<CountAlgo> algo;
  unsigned threads = 1;
};

// Counts X_1 and Y_1 over F_p and compares their traces.
TraceRecord compare_traces(std::uint64_t p, const TraceOptions& options = {});

struct HeckeRecord {
  std::uint64_t p = 0;
  std::uint64_t count_p = 0;
  std::uint64_t count_p2 = 0;
  long long t_p = 0;
  long long t_p2 = 0;
  long long predicted = 0;  // t_p^2 - 2 p^3
  bool holds = false;
};

// Two-dimensionality of H^3: t_{p^2} = t_p^2 - 2p^3 for X_1, with p = 1, 4 mod 5.
HeckeRecord hecke_consistency(std::uint64_t p, const TraceOptions& options = {});

}  // namespace mql

#include "mql/modularity.hpp"

namespace mql {

namespace {

struct PrimePower {
  std::uint64_t p;
  int k;
};

PrimePower validate(std::uint64_t q, int residue) {
  if (q < 2) throw Error(ErrorCode::kInvalidArgument, "q must be at least 2");
  if (q > (1u << 20)) throw Error(ErrorCode::kOverflow, "q above 2^20");
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  std::uint64_t rest = q;
  int k = 0;
  while (rest % p == 0) {
    rest /= p;
    ++k;
  }
  if (rest != 1) throw Error(ErrorCode::kInvalidArgument, std::to_string(q) + " is not a prime power");
  if (p == 5) throw Error(ErrorCode::kBadReduction, std::to_string(q) + " is a power of 5");
  if (residue < 1 || residue > 4 || static_cast<std::uint64_t>(residue) != q % 5)
    throw Error(ErrorCode::kInvalidArgument, "residue must equal q mod 5");
  if (k > 1 && (residue == 2 || residue == 3))
    throw Error(ErrorCode::kUnsupportedBranch, "no trace formula over F_" + std::to_string(q) + " with q = 2,3 mod 5");
  return {p, k};
}

std::uint64_t count_of(FamilyInstance inst, const TraceOptions& o) {
  const CountTask task{std::move(inst), o.algo, o.threads};
  return o.cache ? count_cached(task, *o.cache).record.count : run_count(task).count;
}

void require_good_prime(std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorCode::kCompositeCharacteristic, std::to_string(p) + " is not prime");
  if (p == 5) throw Error(ErrorCode::kBadReduction, "p = 5");
}

}  // namespace

long long trace_x(std::uint64_t q, int residue, std::uint64_t count) {
  validate(q, residue);
  const long long Q = static_cast<long long>(q);
  const long long c = static_cast<long long>(count);
  switch (residue) {
    case 1: return Q * Q * Q + 25 * Q * Q - 100 * Q + 1 - c;
    case 4: return Q * Q * Q + Q * Q + 1 - c;
    default: return Q * Q * Q + Q * Q + 2 * Q + 1 - c;
  }
}

long long trace_y(std::uint64_t q, int residue, std::uint64_t count) {
  validate(q, residue);
  const long long Q = static_cast<long long>(q);
  const long long c = static_cast<long long>(count);
  if (residue == 1 || residue == 4) return Q * Q * Q + Q * Q + 1 - c;
  return Q * Q * Q + Q * Q + 2 * Q + 1 - c;
}

bool weil_bound_holds(long long a, std::uint64_t q) {
  if (q > (1u << 20)) throw Error(ErrorCode::kOverflow, "q above 2^20");
  const std::uint64_t m = a < 0 ? 0 - static_cast<std::uint64_t>(a) : static_cast<std::uint64_t>(a);
  if (m >= (std::uint64_t{1} << 32)) return false;  // m^2 >= 2^64 > 4q^3
  return m * m <= 4 * q * q * q;
}

TraceRecord compare_traces(std::uint64_t p, const TraceOptions& options) {
  require_good_prime(p);
  if (p > kTableFieldCap) throw Error(ErrorCode::kInstanceTooLarge, "p above the fast-path cap");
  const Field f = make_field(p);
  TraceRecord r;
  r.p = p;
  r.residue = static_cast<int>(p % 5);
  r.count_x = count_of(quintic_x(f.one()), options);
  r.count_y = count_of(quintic_y(f.one()), options);
  r.ap_x = trace_x(p, r.residue, r.count_x);
  r.ap_y = trace_y(p, r.residue, r.count_y);
  r.weil_ok = weil_bound_holds(r.ap_x, p) && weil_bound_holds(r.ap_y, p);
  r.match_ok = r.ap_x == r.ap_y;
  return r;
}

HeckeRecord hecke_consistency(std::uint64_t p, const TraceOptions& options) {
  require_good_prime(p);
  if (p % 5 == 2 || p % 5 == 3)
    throw Error(ErrorCode::kUnsupportedBranch, "Hecke check needs p = 1, 4 mod 5, got " + std::to_string(p));
  if (p * p > kTableFieldCap) throw Error(ErrorCode::kInstanceTooLarge, "p^2 above the fast-path cap");
  HeckeRecord r;
  r.p = p;
  r.count_p = count_of(quintic_x(make_field(p).one()), options);
  r.count_p2 = count_of(quintic_x(make_field(p, 2).one()), options);
  r.t_p = trace_x(p, static_cast<int>(p % 5), r.count_p);
  r.t_p2 = trace_x(p * p, 1, r.count_p2);
  const long long P = static_cast<long long>(p);
  r.predicted = r.t_p * r.t_p - 2 * P * P * P;
  r.holds = r.t_p2 == r.predicted;
  return r;
}

}  // namespace mql

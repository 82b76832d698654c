#include "mql/counting.hpp"

#include <chrono>
#include <cmath>
#include <fstream>

#include "json.hpp"

namespace mql {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t ms_since(Clock::time_point start) {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count());
}

CountRecord make_record(const FamilyInstance& inst, std::uint64_t count, CountAlgo algo, Clock::time_point start) {
  CountRecord r;
  r.family = inst.id;
  r.params = inst.params_key();
  r.p = inst.field.characteristic();
  r.k = inst.field.degree();
  r.q = inst.field.order();
  r.count = count;
  r.algo = algo;
  r.elapsed_ms = ms_since(start);
  return r;
}

struct PrimeArith {
  std::uint64_t p;
  Index add(Index a, Index b) const noexcept {
    const Index s = a + b;
    return s >= p ? s - p : s;
  }
  Index mul(Index a, Index b) const noexcept { return a * b % p; }
};

// Extension-field arithmetic on flat tables; the addition table is only
// built while it stays under 32 MiB.
struct ExtArith {
  static constexpr std::uint64_t kAddTableCap = 4096;

  explicit ExtArith(const Field& f) : field(f), q(f.order()), log(q, 0), exp(q - 1) {
    Index x = Field::kOne;
    for (std::uint64_t i = 0; i + 1 < q; ++i) {
      exp[i] = static_cast<std::uint32_t>(x);
      log[x] = static_cast<std::uint32_t>(i);
      x = f.mul(x, f.generator());
    }
    if (q <= kAddTableCap) {
      addtab.resize(q * q);
      for (Index a = 0; a < q; ++a)
        for (Index b = 0; b < q; ++b) addtab[a * q + b] = static_cast<std::uint16_t>(f.add(a, b));
    }
  }

  Index add(Index a, Index b) const noexcept { return addtab.empty() ? field.add(a, b) : addtab[a * q + b]; }
  Index mul(Index a, Index b) const noexcept {
    if (a == 0 || b == 0) return 0;
    std::uint64_t e = std::uint64_t{log[a]} + log[b];
    if (e >= q - 1) e -= q - 1;
    return exp[e];
  }

  Field field;
  std::uint64_t q;
  std::vector<std::uint32_t> log;
  std::vector<std::uint32_t> exp;
  std::vector<std::uint16_t> addtab;
};

// Sums table[row][col] over the normalized tails (x1, ..., x4) of the affine
// cone, where sum = term(x1) + ... + term(x4) and prod = scale * x1 x2 x3 x4.
// For X the row is the product, for Y the row is the sum.
template <class Arith>
std::uint64_t scan_tails(const Arith& ar, std::uint64_t q, const std::vector<std::uint8_t>& table,
                         const std::vector<Index>& term, Index scale, bool product_row, unsigned threads) {
  auto cell = [&](Index sum, Index prod) -> std::uint64_t {
    return product_row ? table[prod * q + sum] : table[sum * q + prod];
  };
  const Index lead = term[Field::kOne];

  // Chart x1 = 1: the q^3 bulk, chunked over x2.
  const std::uint64_t bulk = parallel_sum<std::uint64_t>(q, threads, [&](std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t total = 0;
    for (Index x2 = lo; x2 < hi; ++x2) {
      const Index p2 = ar.mul(scale, x2);
      const Index s2 = ar.add(lead, term[x2]);
      for (Index x3 = 0; x3 < q; ++x3) {
        const Index p3 = ar.mul(p2, x3);
        const Index s3 = ar.add(s2, term[x3]);
        for (Index x4 = 0; x4 < q; ++x4) total += cell(ar.add(s3, term[x4]), ar.mul(p3, x4));
      }
    }
    return total;
  });

  // Charts with x1 = 0: the product vanishes.
  std::uint64_t rest = cell(lead, 0);
  for (Index x4 = 0; x4 < q; ++x4) rest += cell(ar.add(lead, term[x4]), 0);
  for (Index x3 = 0; x3 < q; ++x3) {
    const Index s3 = ar.add(lead, term[x3]);
    for (Index x4 = 0; x4 < q; ++x4) rest += cell(ar.add(s3, term[x4]), 0);
  }
  return bulk + rest;
}

template <class Arith>
std::uint64_t x_table_count(const Arith& ar, const Field& f, Index mu, unsigned threads) {
  const std::uint64_t q = f.order();
  std::vector<Index> fifth(q);
  for (Index x = 0; x < q; ++x) fifth[x] = f.pow(x, 5);
  std::vector<std::uint8_t> roots(q * q, 0);
  for (Index a = 0; a < q; ++a)
    for (Index x0 = 0; x0 < q; ++x0) ++roots[a * q + f.neg(ar.add(fifth[x0], ar.mul(a, x0)))];
  const Index scale = f.neg(f.mul(f.from_int(5), mu));
  return scan_tails(ar, q, roots, fifth, scale, true, threads);
}

template <class Arith>
std::uint64_t y_table_count(const Arith& ar, const Field& f, Index c, unsigned threads) {
  const std::uint64_t q = f.order();
  std::vector<Index> identity(q);
  for (Index x = 0; x < q; ++x) identity[x] = x;
  std::vector<Index> inv_cx(q, 0);
  for (Index x0 = 1; x0 < q; ++x0) inv_cx[x0] = f.inv(f.mul(c, x0));
  std::vector<std::uint8_t> roots(q * q, 0);
  for (Index t = 0; t < q; ++t)
    for (Index x0 = 1; x0 < q; ++x0) ++roots[t * q + ar.mul(f.pow(ar.add(x0, t), 5), inv_cx[x0])];
  // x0 = 0 solves (x0 + T)^5 = c P x0 exactly when T = 0.
  for (Index pv = 0; pv < q; ++pv) ++roots[pv];
  return scan_tails(ar, q, roots, identity, Field::kOne, false, threads);
}

void require_table_size(const Field& f) {
  if (f.order() > kTableFieldCap)
    throw Error(ErrorCode::kInstanceTooLarge, f.name() + " exceeds the table path cap of 8192");
}

}  // namespace

std::string_view to_string(CountAlgo algo) noexcept { return algo == CountAlgo::Naive ? "naive" : "table"; }

std::optional<CountAlgo> parse_count_algo(std::string_view s) noexcept {
  if (s == "naive") return CountAlgo::Naive;
  if (s == "table") return CountAlgo::Table;
  return std::nullopt;
}

CountRecord count_naive(const FamilyInstance& instance, unsigned threads) {
  const auto start = Clock::now();
  const std::uint64_t q = instance.field.order();
  const std::size_t n = instance.ambient_dim;
  if (std::pow(static_cast<double>(q), static_cast<double>(n)) > kNaiveWorkCap)
    throw Error(ErrorCode::kInstanceTooLarge, "q^n exceeds 1e10 for naive enumeration");
  const std::uint64_t total = projective_point_count(q, n);
  const std::uint64_t count = parallel_sum<std::uint64_t>(total, threads, [&](std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t c = 0;
    for_each_normalized(q, n, lo, hi, [&](const std::vector<Index>& x) { c += satisfies(instance, x) ? 1 : 0; });
    return c;
  });
  return make_record(instance, count, CountAlgo::Naive, start);
}

CountRecord count_x_table(const FieldElement& mu, unsigned threads) {
  const auto start = Clock::now();
  const Field& f = mu.field();
  require_table_size(f);
  const FamilyInstance inst = quintic_x(mu);
  const std::uint64_t count = f.is_prime_field()
                                  ? x_table_count(PrimeArith{f.characteristic()}, f, mu.index(), threads)
                                  : x_table_count(ExtArith(f), f, mu.index(), threads);
  return make_record(inst, count, CountAlgo::Table, start);
}

CountRecord count_y_table(const FieldElement& mu, unsigned threads) {
  const Field& f = mu.field();
  require_table_size(f);
  const FamilyInstance inst = quintic_y(mu);
  const Index c = f.pow(f.mul(f.from_int(5), mu.index()), 5);
  if (c == Field::kZero) return count_naive(inst, threads);
  const auto start = Clock::now();
  const std::uint64_t count = f.is_prime_field() ? y_table_count(PrimeArith{f.characteristic()}, f, c, threads)
                                                 : y_table_count(ExtArith(f), f, c, threads);
  return make_record(inst, count, CountAlgo::Table, start);
}

CountRecord run_count(const CountTask& task) {
  const auto& inst = task.instance;
  const bool has_table = inst.id == FamilyId::QuinticX || inst.id == FamilyId::QuinticY;
  const CountAlgo algo = task.algo.value_or(has_table ? CountAlgo::Table : CountAlgo::Naive);
  if (algo == CountAlgo::Table && has_table) {
    const auto& mu = inst.param("mu");
    return inst.id == FamilyId::QuinticX ? count_x_table(mu, task.threads) : count_y_table(mu, task.threads);
  }
  return count_naive(inst, task.threads);
}

std::string to_cache_line(const CountRecord& r) {
  nlohmann::ordered_json j;
  j["family"] = std::string(family_tag(r.family));
  j["params"] = r.params;
  j["p"] = r.p;
  j["k"] = r.k;
  j["count"] = r.count;
  j["algo"] = std::string(to_string(r.algo));
  j["elapsed_ms"] = r.elapsed_ms;
  j["version"] = r.version;
  return j.dump();
}

CountRecord parse_cache_line(std::string_view line) {
  auto corrupt = [](const std::string& why) { return Error(ErrorCode::kCacheCorrupt, why); };
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw corrupt(std::string("not JSON: ") + e.what());
  }
  static const std::vector<std::string> keys{"family", "params", "p", "k", "count", "algo", "elapsed_ms", "version"};
  if (!j.is_object() || j.size() != keys.size()) throw corrupt("expected an object with 8 keys");
  for (const auto& key : keys)
    if (!j.contains(key)) throw corrupt("missing key '" + key + "'");
  for (const char* key : {"p", "k", "count", "elapsed_ms", "version"})
    if (!j[key].is_number_unsigned()) throw corrupt(std::string("'") + key + "' must be a non-negative integer");
  if (!j["family"].is_string() || !j["params"].is_string() || !j["algo"].is_string())
    throw corrupt("family, params and algo must be strings");

  CountRecord r;
  const auto family = parse_family(j["family"].get<std::string>());
  if (!family) throw corrupt("unknown family");
  const auto algo = parse_count_algo(j["algo"].get<std::string>());
  if (!algo) throw corrupt("unknown algo");
  r.family = *family;
  r.algo = *algo;
  r.params = j["params"].get<std::string>();
  r.p = j["p"].get<std::uint64_t>();
  r.k = j["k"].get<int>();
  r.count = j["count"].get<std::uint64_t>();
  r.elapsed_ms = j["elapsed_ms"].get<std::uint64_t>();
  r.version = j["version"].get<int>();
  if (r.k < 1 || r.k > 4 || r.p < 2) throw corrupt("field out of range");
  r.q = 1;
  for (int i = 0; i < r.k; ++i) r.q *= r.p;
  return r;
}

CachedCount count_cached(const CountTask& task, const std::filesystem::path& cache_path) {
  CachedCount out;
  const auto& inst = task.instance;
  const std::string family(family_tag(inst.id));
  const std::string params = inst.params_key();

  std::optional<CountRecord> hit;
  if (std::ifstream in(cache_path); in) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        CountRecord r = parse_cache_line(line);
        if (!hit && r.family == inst.id && r.params == params && r.p == inst.field.characteristic() &&
            r.k == inst.field.degree() && r.version == kCountRecordVersion) {
          hit = r;
        }
      } catch (const Error& e) {
        out.warnings.push_back(cache_path.string() + ":" + std::to_string(line_no) + ": " + e.what());
      }
    }
  }
  if (hit && out.warnings.empty()) {
    out.record = *hit;
    out.hit = true;
    return out;
  }

  out.record = run_count(task);
  std::ofstream app(cache_path, std::ios::app);
  if (!app) throw Error(ErrorCode::kInvalidArgument, "cannot append to cache " + cache_path.string());
  app << to_cache_line(out.record) << '\n';
  return out;
}

}  // namespace mql

#include "mql/ffield.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <utility>

namespace mql {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kCompositeCharacteristic: return "CompositeCharacteristic";
    case ErrorCode::kUnsupportedDegree: return "UnsupportedDegree";
    case ErrorCode::kTableTooLarge: return "TableTooLarge";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kFieldMismatch: return "FieldMismatch";
    case ErrorCode::kMissingParameter: return "MissingParameter";
    case ErrorCode::kRootOfUnityUnavailable: return "RootOfUnityUnavailable";
    case ErrorCode::kZeroDenominator: return "ZeroDenominator";
    case ErrorCode::kInstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::kDegenerateParameter: return "DegenerateParameter";
    case ErrorCode::kCacheCorrupt: return "CacheCorrupt";
    case ErrorCode::kNotSingular: return "NotSingular";
    case ErrorCode::kBadCharacteristic: return "BadCharacteristic";
    case ErrorCode::kBadReduction: return "BadReduction";
    case ErrorCode::kUnsupportedBranch: return "UnsupportedBranch";
    case ErrorCode::kNonIntegralSolution: return "NonIntegralSolution";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kOverflow: return "Overflow";
  }
  return "Unknown";
}

namespace {

using Coeffs = std::vector<std::uint64_t>;

// Remainder of a modulo a monic b over F_p; both low-to-high.
Coeffs poly_rem(Coeffs a, const Coeffs& b, std::uint64_t p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::uint64_t lead = a.back() % p;
    if (lead != 0) {
      const std::size_t shift = a.size() - 1 - db;
      for (std::size_t i = 0; i <= db; ++i) {
        a[shift + i] = (a[shift + i] + p - (lead * b[i]) % p) % p;
      }
    }
    a.pop_back();
  }
  return a;
}

bool has_root(const Coeffs& f, std::uint64_t p) {
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = (acc * x + *it) % p;
    if (acc == 0) return true;
  }
  return false;
}

bool has_quadratic_factor(const Coeffs& f, std::uint64_t p) {
  for (std::uint64_t c0 = 0; c0 < p; ++c0) {
    for (std::uint64_t c1 = 0; c1 < p; ++c1) {
      const Coeffs r = poly_rem(f, {c0, c1, 1}, p);
      if (std::all_of(r.begin(), r.end(), [](std::uint64_t c) { return c == 0; })) return true;
    }
  }
  return false;
}

// Degree <= 4: irreducible iff there is no factor of degree <= k/2.
bool is_irreducible(const Coeffs& f, std::uint64_t p) {
  const std::size_t k = f.size() - 1;
  if (has_root(f, p)) return false;
  if (k >= 4 && has_quadratic_factor(f, p)) return false;
  return true;
}

Coeffs smallest_irreducible(std::uint64_t p, int k) {
  std::uint64_t count = 1;
  for (int i = 0; i < k; ++i) count *= p;
  // Lexicographic over (c0, ..., c_{k-1}): c0 is the most significant digit.
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Coeffs f(static_cast<std::size_t>(k) + 1, 0);
    std::uint64_t t = idx;
    for (int i = k - 1; i >= 0; --i) {
      f[static_cast<std::size_t>(i)] = t % p;
      t /= p;
    }
    f[static_cast<std::size_t>(k)] = 1;
    if (is_irreducible(f, p)) return f;
  }
  throw Error(ErrorCode::kInvalidArgument, "no irreducible polynomial found");
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

Index slow_pow(const detail::FieldData& d, Index a, std::uint64_t e) {
  Index r = 1;
  while (e > 0) {
    if (e & 1) r = d.k == 1 ? (r * a) % d.p : detail::slow_mul(d, r, a);
    a = d.k == 1 ? (a * a) % d.p : detail::slow_mul(d, a, a);
    e >>= 1;
  }
  return r;
}

Index find_generator(const detail::FieldData& d) {
  if (d.q == 2) return 1;
  const auto factors = prime_factors(d.q - 1);
  for (Index g = 2; g < d.q; ++g) {
    bool ok = true;
    for (const auto r : factors) {
      if (slow_pow(d, g, (d.q - 1) / r) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw Error(ErrorCode::kInvalidArgument, "no generator found");
}

std::shared_ptr<const detail::FieldData> build_field(std::uint64_t p, int k) {
  auto d = std::make_shared<detail::FieldData>();
  d->p = p;
  d->k = k;
  d->place.assign(static_cast<std::size_t>(k) + 1, 1);
  for (int i = 1; i <= k; ++i) d->place[static_cast<std::size_t>(i)] = d->place[static_cast<std::size_t>(i) - 1] * p;
  d->q = d->place[static_cast<std::size_t>(k)];
  if (k > 1) d->modulus = smallest_irreducible(p, k);
  d->generator = find_generator(*d);
  if (k > 1 && d->q <= Field::kTableCap) {
    d->exp.resize(d->q - 1);
    d->log.assign(d->q, 0);
    Index x = 1;
    for (std::uint64_t i = 0; i + 1 < d->q; ++i) {
      d->exp[i] = static_cast<std::uint32_t>(x);
      d->log[x] = static_cast<std::uint32_t>(i);
      x = detail::slow_mul(*d, x, d->generator);
    }
  }
  return d;
}

}  // namespace

namespace detail {

Index slow_mul(const FieldData& d, Index a, Index b) {
  const std::size_t k = static_cast<std::size_t>(d.k);
  const std::uint64_t p = d.p;
  std::uint64_t ca[4] = {0, 0, 0, 0};
  std::uint64_t cb[4] = {0, 0, 0, 0};
  for (std::size_t i = 0; i < k; ++i) {
    ca[i] = a % p;
    cb[i] = b % p;
    a /= p;
    b /= p;
  }
  std::uint64_t prod[8] = {0, 0, 0, 0, 0, 0, 0, 0};
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
  for (std::size_t top = 2 * k - 2; top >= k; --top) {
    const std::uint64_t lead = prod[top];
    if (lead != 0) {
      for (std::size_t i = 0; i <= k; ++i)
        prod[top - k + i] = (prod[top - k + i] + p - (lead * d.modulus[i]) % p) % p;
    }
  }
  Index r = 0;
  for (std::size_t i = 0; i < k; ++i) r += prod[i] * d.place[i];
  return r;
}

}  // namespace detail

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field make_field(std::uint64_t p, int k) {
  if (!is_prime(p)) throw Error(ErrorCode::kCompositeCharacteristic, std::to_string(p) + " is not prime");
  if (k < 1 || k > 4) throw Error(ErrorCode::kUnsupportedDegree, "extension degree " + std::to_string(k));
  if (p >= (std::uint64_t{1} << 31))
    throw Error(ErrorCode::kInvalidArgument, "characteristic must be below 2^31");

  // Shared so repeated requests reuse the log/exp tables.
  static std::mutex mutex;
  static std::map<std::pair<std::uint64_t, int>, std::shared_ptr<const detail::FieldData>> cache;
  const std::lock_guard lock(mutex);
  auto& slot = cache[{p, k}];
  if (!slot) slot = build_field(p, k);
  return Field(slot);
}

bool operator==(const Field& a, const Field& b) noexcept {
  if (a.d_ == b.d_) return true;
  return a.d_->p == b.d_->p && a.d_->k == b.d_->k && a.d_->modulus == b.d_->modulus;
}

Index Field::pow(Index a, std::uint64_t e) const noexcept {
  Index r = 1;
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Index Field::inv(Index a) const {
  if (a == 0) throw Error(ErrorCode::kInvalidArgument, "inverse of zero");
  return pow(a, d_->q - 2);
}

Index Field::from_int(long long v) const noexcept {
  const auto p = static_cast<long long>(d_->p);
  long long r = v % p;
  if (r < 0) r += p;
  return static_cast<Index>(r);
}

std::vector<std::uint64_t> Field::coefficients(Index a) const {
  std::vector<std::uint64_t> out(static_cast<std::size_t>(d_->k));
  for (auto& c : out) {
    c = a % d_->p;
    a /= d_->p;
  }
  return out;
}

Index Field::from_coefficients(std::span<const std::uint64_t> coeffs) const {
  if (coeffs.size() != static_cast<std::size_t>(d_->k))
    throw Error(ErrorCode::kDimensionMismatch, "coefficient vector length");
  Index r = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) r += (coeffs[i] % d_->p) * d_->place[i];
  return r;
}

std::uint64_t Field::multiplicative_order(Index a) const {
  if (a == 0) throw Error(ErrorCode::kInvalidArgument, "order of zero");
  std::uint64_t n = d_->q - 1;
  for (const auto r : prime_factors(d_->q - 1)) {
    while (n % r == 0 && pow(a, n / r) == 1) n /= r;
  }
  return n;
}

FieldElement Field::element(long long v) const { return {*this, from_int(v)}; }
FieldElement Field::at(Index a) const { return {*this, a}; }
FieldElement Field::zero() const { return {*this, 0}; }
FieldElement Field::one() const { return {*this, 1}; }

std::string Field::format(Index a) const {
  if (d_->k == 1) return std::to_string(a);
  std::string out;
  for (const auto c : coefficients(a)) {
    if (!out.empty()) out += ',';
    out += std::to_string(c);
  }
  return out;
}

std::string Field::name() const {
  if (d_->k == 1) return "F_" + std::to_string(d_->p);
  return "F_" + std::to_string(d_->p) + "^" + std::to_string(d_->k);
}

FieldElement::FieldElement(Field field, Index value) : field_(std::move(field)), value_(value) {
  if (value_ >= field_.order()) throw Error(ErrorCode::kInvalidArgument, "element index out of range");
}

void FieldElement::require_same_field(const FieldElement& o) const {
  if (!(field_ == o.field_)) throw Error(ErrorCode::kFieldMismatch, field_.name() + " vs " + o.field_.name());
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  require_same_field(o);
  value_ = field_.add(value_, o.value_);
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  require_same_field(o);
  value_ = field_.sub(value_, o.value_);
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  require_same_field(o);
  value_ = field_.mul(value_, o.value_);
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o) {
  require_same_field(o);
  value_ = field_.div(value_, o.value_);
  return *this;
}

std::vector<FieldElement> nth_roots_of_unity(const Field& field, std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "n must be positive");
  const std::uint64_t group = field.order() - 1;
  const std::uint64_t d = std::gcd(n, group);
  const Index step = field.pow(field.generator(), group / d);
  std::vector<Index> idx;
  Index x = 1;
  for (std::uint64_t i = 0; i < d; ++i) {
    idx.push_back(x);
    x = field.mul(x, step);
  }
  std::sort(idx.begin(), idx.end());
  std::vector<FieldElement> out;
  out.reserve(idx.size());
  for (const auto i : idx) out.emplace_back(field, i);
  return out;
}

std::optional<FieldElement> primitive_root_of_unity(const Field& field, std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "n must be positive");
  const std::uint64_t group = field.order() - 1;
  if (group % n != 0) return std::nullopt;
  return FieldElement(field, field.pow(field.generator(), group / n));
}

PowerTable power_table(const Field& field, std::uint64_t e) {
  if (field.order() > Field::kTableCap)
    throw Error(ErrorCode::kTableTooLarge, field.name() + " exceeds 2^20 elements");
  PowerTable table(field.order());
  for (Index x = 0; x < field.order(); ++x) table[x] = field.pow(x, e);
  return table;
}

}  // namespace mql

// mql: command-line driver for point counts, traces, singular loci, the
// Euler-characteristic ledger and the verification suites.
//
// Exit codes: 0 success, 1 a check failed or a computation raised, 2 usage error.

#include <sys/file.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <fcntl.h>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mql/counting.hpp"
#include "mql/ledger.hpp"
#include "mql/modularity.hpp"
#include "mql/singular.hpp"
#include "mql/verify.hpp"

#ifndef MQL_VERSION
#define MQL_VERSION "0.0.0"
#endif

using nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string family;
  std::optional<long long> mu, lambda, nu;
  std::optional<std::uint64_t> p;
  std::string p_range;
  int ext = 1;
  std::string algo;
  unsigned threads = 1;
  std::string cache;
  std::string out;
  std::string format;
  std::string suite;
};

// Holds an exclusive flock on "<cache>.lock" for the lifetime of the run.
class CacheLock {
 public:
  explicit CacheLock(const std::string& cache) {
    if (cache.empty()) return;
    const std::string path = cache + ".lock";
    fd_ = ::open(path.c_str(), O_CREAT | O_RDWR, 0644);
    if (fd_ < 0 || ::flock(fd_, LOCK_EX) != 0) throw std::runtime_error("cannot lock " + path);
  }
  ~CacheLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  CacheLock(const CacheLock&) = delete;
  CacheLock& operator=(const CacheLock&) = delete;

 private:
  int fd_ = -1;
};

std::uint64_t require_prime(std::optional<std::uint64_t> p) {
  if (!p) throw UsageError("--p is required");
  if (!mql::is_prime(*p)) throw UsageError(std::to_string(*p) + " is not prime");
  if (*p >= (std::uint64_t{1} << 31)) throw UsageError("--p must be below 2^31");
  return *p;
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) throw UsageError("--p-range must look like a..b");
  try {
    std::size_t used = 0;
    const auto a = std::stoull(s.substr(0, dots), &used);
    if (used != dots) throw UsageError("bad lower bound in --p-range");
    const std::string rest = s.substr(dots + 2);
    const auto b = std::stoull(rest, &used);
    if (used != rest.size()) throw UsageError("bad upper bound in --p-range");
    if (a < 2 || b < a) throw UsageError("--p-range needs 2 <= a <= b");
    return {a, b};
  } catch (const std::logic_error&) {
    throw UsageError("--p-range must look like a..b");
  }
}

std::string output_format(const RunConfig& c, const std::string& fallback) {
  if (!c.format.empty()) return c.format;
  if (c.out.size() >= 4 && c.out.compare(c.out.size() - 4, 4, ".csv") == 0) return "csv";
  return fallback;
}

void emit(const RunConfig& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + c.out);
  f << text;
}

ordered_json config_echo(const std::string& command, const RunConfig& c) {
  ordered_json j;
  j["command"] = command;
  if (!c.family.empty()) j["family"] = c.family;
  if (c.mu) j["mu"] = *c.mu;
  if (c.lambda) j["lambda"] = *c.lambda;
  if (c.nu) j["nu"] = *c.nu;
  if (c.p) j["p"] = *c.p;
  if (!c.p_range.empty()) j["p_range"] = c.p_range;
  j["ext"] = c.ext;
  if (!c.algo.empty()) j["algo"] = c.algo;
  j["threads"] = c.threads;
  if (!c.cache.empty()) j["cache"] = c.cache;
  if (!c.suite.empty()) j["suite"] = c.suite;
  return j;
}

std::string envelope(const std::string& command, const RunConfig& c, const ordered_json& records, bool ok) {
  ordered_json j;
  j["tool"] = "mql";
  j["version"] = MQL_VERSION;
  j["config"] = config_echo(command, c);
  j["records"] = records;
  j["status"] = ok ? "ok" : "failed";
  return j.dump(2) + "\n";
}

mql::FamilyInstance build_instance(const RunConfig& c) {
  const auto id = mql::parse_family(c.family);
  if (!id || *id == mql::FamilyId::LinesA || *id == mql::FamilyId::PointsB)
    throw UsageError("--family must be one of X, Y, Q, V, W, Wt");
  if (c.ext < 1 || c.ext > 4) throw UsageError("--ext must be in 1..4");
  const mql::Field f = mql::make_field(require_prime(c.p), c.ext);
  auto need = [&](const std::optional<long long>& v, const char* flag) {
    if (!v) throw UsageError(std::string("family ") + c.family + " needs " + flag);
    return f.element(*v);
  };
  switch (*id) {
    case mql::FamilyId::QuinticX: return mql::quintic_x(need(c.mu, "--mu"));
    case mql::FamilyId::QuinticY: return mql::quintic_y(need(c.mu, "--mu"));
    case mql::FamilyId::QuadricQ: return mql::quadric_q(f);
    case mql::FamilyId::CubicsV: return mql::cubics_v(need(c.lambda, "--lambda"));
    case mql::FamilyId::CubicsW: return mql::cubics_w(need(c.lambda, "--lambda"));
    default:
      if (c.nu) return mql::cubics_wtilde(f.element(*c.nu));
      return mql::cubics_wtilde_from_lambda(need(c.lambda, "--nu or --lambda"));
  }
}

std::optional<std::filesystem::path> cache_path(const RunConfig& c) {
  if (c.cache.empty()) return std::nullopt;
  return std::filesystem::path(c.cache);
}

std::optional<mql::CountAlgo> algo_of(const RunConfig& c) {
  if (c.algo.empty()) return std::nullopt;
  return mql::parse_count_algo(c.algo);
}

int cmd_count(const RunConfig& c) {
  const auto inst = build_instance(c);
  const mql::CountTask task{inst, algo_of(c), c.threads};
  ordered_json rec;
  bool ok = true;
  mql::CountRecord r;
  try {
    if (const auto path = cache_path(c)) {
      const auto cached = mql::count_cached(task, *path);
      for (const auto& w : cached.warnings) std::cerr << "warning: " << w << "\n";
      std::cerr << (cached.hit ? "cache hit" : "cache miss") << "\n";
      r = cached.record;
    } else {
      r = mql::run_count(task);
    }
    rec = ordered_json::parse(mql::to_cache_line(r));
    rec["q"] = r.q;
    rec["status"] = "ok";
  } catch (const mql::Error& e) {
    ok = false;
    rec["family"] = c.family;
    rec["params"] = inst.params_key();
    rec["p"] = inst.field.characteristic();
    rec["k"] = inst.field.degree();
    rec["status"] = std::string("error: ") + e.what();
  }
  if (output_format(c, "json") == "csv") {
    std::ostringstream s;
    s << "family,params,p,k,q,count,algo,elapsed_ms\n";
    if (ok)
      s << mql::family_tag(r.family) << ',' << r.params << ',' << r.p << ',' << r.k << ',' << r.q << ',' << r.count << ','
        << mql::to_string(r.algo) << ',' << r.elapsed_ms << '\n';
    emit(c, s.str());
  } else {
    emit(c, envelope("count", c, ordered_json::array({rec}), ok));
  }
  return ok ? kOk : kFailed;
}

int cmd_trace(const RunConfig& c) {
  std::uint64_t lo, hi;
  if (!c.p_range.empty()) {
    std::tie(lo, hi) = parse_range(c.p_range);
  } else {
    lo = hi = require_prime(c.p);
  }
  if (hi > mql::kTableFieldCap) throw UsageError("primes above 8192 exceed the counting fast path");
  const mql::TraceOptions opts{cache_path(c), algo_of(c), c.threads};
  bool ok = true;
  ordered_json records = ordered_json::array();
  std::ostringstream csv;
  csv << "p,residue,count_x,count_y,ap_x,ap_y,weil_ok,match_ok\n";
  for (std::uint64_t p = lo; p <= hi; ++p) {
    if (!mql::is_prime(p) || p == 5) continue;
    try {
      const auto r = mql::compare_traces(p, opts);
      ok = ok && r.match_ok && r.weil_ok;
      records.push_back({{"p", r.p},           {"residue", r.residue}, {"count_x", r.count_x},
                         {"count_y", r.count_y}, {"ap_x", r.ap_x},       {"ap_y", r.ap_y},
                         {"weil_ok", r.weil_ok}, {"match_ok", r.match_ok}, {"status", "ok"}});
      csv << r.p << ',' << r.residue << ',' << r.count_x << ',' << r.count_y << ',' << r.ap_x << ',' << r.ap_y << ','
          << (r.weil_ok ? "true" : "false") << ',' << (r.match_ok ? "true" : "false") << '\n';
    } catch (const mql::Error& e) {
      ok = false;
      records.push_back({{"p", p}, {"status", std::string("error: ") + e.what()}});
    }
  }
  emit(c, output_format(c, "json") == "csv" ? csv.str() : envelope("trace", c, records, ok));
  return ok ? kOk : kFailed;
}

int cmd_hecke(const RunConfig& c) {
  const std::uint64_t p = require_prime(c.p);
  ordered_json rec;
  bool ok = false;
  try {
    const auto h = mql::hecke_consistency(p, {cache_path(c), algo_of(c), c.threads});
    ok = h.holds;
    rec = {{"p", h.p},       {"count_p", h.count_p},     {"count_p2", h.count_p2}, {"t_p", h.t_p},
           {"t_p2", h.t_p2}, {"predicted", h.predicted}, {"holds", h.holds},       {"status", "ok"}};
  } catch (const mql::Error& e) {
    rec = {{"p", p}, {"status", std::string("error: ") + e.what()}};
  }
  emit(c, envelope("hecke", c, ordered_json::array({rec}), ok));
  return ok ? kOk : kFailed;
}

int cmd_singular(const RunConfig& c) {
  const auto inst = build_instance(c);
  ordered_json rec;
  bool ok = true;
  try {
    const auto rep = mql::singular_points(inst, c.threads);
    rec["family"] = c.family;
    rec["params"] = rep.params;
    rec["p"] = inst.field.characteristic();
    rec["k"] = inst.field.degree();
    rec["count"] = rep.points.size();
    ordered_json strata = ordered_json::object();
    for (const auto& [s, n] : rep.by_stratum) strata[std::string(mql::to_string(s))] = n;
    rec["by_stratum"] = strata;
    ordered_json pts = ordered_json::array();
    for (const auto& pt : rep.points) {
      ordered_json e{{"point", pt.to_string()}};
      if (inst.codimension() == 1 && inst.field.characteristic() > 5) {
        const auto n = mql::classify_node(inst, pt);
        e["hessian_rank"] = n.hessian_rank;
        e["is_node"] = n.is_node;
      }
      pts.push_back(e);
    }
    rec["points"] = pts;
    rec["status"] = "ok";
  } catch (const mql::Error& e) {
    ok = false;
    rec = {{"family", c.family}, {"status", std::string("error: ") + e.what()}};
  }
  emit(c, envelope("singular", c, ordered_json::array({rec}), ok));
  return ok ? kOk : kFailed;
}

int cmd_ledger(const RunConfig& c) {
  const auto checks = mql::reproduce_ledger();
  const bool ok = std::all_of(checks.begin(), checks.end(), [](const mql::LedgerCheck& x) { return x.ok; });
  emit(c, mql::ledger_json() + "\n");
  return ok ? kOk : kFailed;
}

int cmd_verify(const RunConfig& c) {
  const auto& names = mql::suite_names();
  if (std::find(names.begin(), names.end(), c.suite) == names.end()) throw UsageError("unknown suite '" + c.suite + "'");
  mql::VerifyOptions o;
  o.threads = c.threads;
  o.cache = cache_path(c);
  const auto checks = mql::run_suite(c.suite, o);
  const bool ok = mql::all_ok(checks);
  if (output_format(c, "text") == "json") {
    ordered_json records = ordered_json::array();
    for (const auto& k : checks) records.push_back({{"check", k.name}, {"ok", k.ok}, {"detail", k.detail}});
    emit(c, envelope("verify", c, records, ok));
  } else {
    std::ostringstream s;
    std::size_t passed = 0;
    for (const auto& k : checks) {
      passed += k.ok ? 1 : 0;
      s << (k.ok ? "PASS  " : "FAIL  ") << k.name;
      if (!k.detail.empty()) s << "  [" << k.detail << "]";
      s << '\n';
    }
    s << passed << '/' << checks.size() << " checks passed\n";
    emit(c, s.str());
  }
  return ok ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Point counts, traces and singular loci for the mirror quintic and related families"};
  app.set_version_flag("--version", std::string(MQL_VERSION));
  app.require_subcommand(1);
  RunConfig c;

  auto common = [&c](CLI::App* sub, bool with_output = true) {
    sub->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--cache", c.cache, "JSON-lines count cache")->envname("MQL_CACHE");
    if (with_output) {
      sub->add_option("--out", c.out, "write the report here instead of stdout");
    }
  };
  auto family_opts = [&c](CLI::App* sub) {
    sub->add_option("--family", c.family, "X, Y, Q, V, W or Wt")
        ->required()
        ->check(CLI::IsMember({"X", "Y", "Q", "V", "W", "Wt"}));
    sub->add_option("--mu", c.mu, "parameter of X and Y");
    sub->add_option("--lambda", c.lambda, "parameter of V and W (and W~ via nu = 1/lambda^3)");
    sub->add_option("--nu", c.nu, "parameter of W~");
    sub->add_option("--p", c.p, "field characteristic")->required();
    sub->add_option("--ext", c.ext, "extension degree k, q = p^k")->check(CLI::Range(1, 4));
  };

  auto* count = app.add_subcommand("count", "count projective F_q-points");
  family_opts(count);
  count->add_option("--algo", c.algo, "naive or table")->check(CLI::IsMember({"naive", "table"}));
  count->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  common(count);

  auto* trace = app.add_subcommand("trace", "Frobenius traces of X_1 and Y_1");
  auto* range_opt = trace->add_option("--p-range", c.p_range, "inclusive prime range a..b");
  trace->add_option("--p", c.p, "single prime")->excludes(range_opt);
  trace->add_option("--algo", c.algo, "naive or table")->check(CLI::IsMember({"naive", "table"}));
  trace->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  common(trace);

  auto* hecke = app.add_subcommand("hecke", "check t_{p^2} = t_p^2 - 2p^3 for X_1");
  hecke->add_option("--p", c.p, "prime congruent to 1 or 4 mod 5")->required();
  hecke->add_option("--algo", c.algo, "naive or table")->check(CLI::IsMember({"naive", "table"}));
  common(hecke);

  auto* singular = app.add_subcommand("singular", "singular points by the Jacobian criterion");
  family_opts(singular);
  common(singular);

  auto* ledger = app.add_subcommand("ledger", "Euler characteristic and Hodge bookkeeping as JSON");
  ledger->add_option("--out", c.out, "write the report here instead of stdout");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", c.suite, "nodes, fibers, groups, coordchange, quadric, ledger, hecke, traces or all")
      ->required();
  verify->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  int code = kOk;
  try {
    CacheLock lock(c.cache);
    if (*count)
      code = cmd_count(c);
    else if (*trace)
      code = cmd_trace(c);
    else if (*hecke)
      code = cmd_hecke(c);
    else if (*singular)
      code = cmd_singular(c);
    else if (*ledger)
      code = cmd_ledger(c);
    else
      code = cmd_verify(c);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n" << app.help();
    return kUsage;
  } catch (const mql::Error& e) {
    const bool usage = e.code() == mql::ErrorCode::kCompositeCharacteristic ||
                       e.code() == mql::ErrorCode::kUnsupportedDegree ||
                       e.code() == mql::ErrorCode::kMissingParameter;
    std::cerr << (usage ? "usage error: " : "error: ") << e.what() << "\n";
    return usage ? kUsage : kFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  std::cerr << "wall time " << ms << " ms\n";
  return code;
}

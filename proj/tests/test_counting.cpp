#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "mql/counting.hpp"

using namespace mql;

namespace {

std::uint64_t naive(const FamilyInstance& inst) { return count_naive(inst).count; }

}  // namespace

TEST_CASE("table counts of X_1 and Y_1 match known values") {
  struct Case {
    std::uint64_t p, x, y;
  };
  for (const Case c : {Case{2, 16, 16}, Case{3, 36, 36}, Case{7, 401, 401}, Case{11, 3300, 1496},
                       Case{13, 2421, 2421}}) {
    const Field f = make_field(c.p);
    CAPTURE(c.p);
    CHECK(count_x_table(f.one()).count == c.x);
    CHECK(count_y_table(f.one()).count == c.y);
  }
}

TEST_CASE("table and naive counts agree") {
  for (std::uint64_t p : {2, 3, 5, 7}) {
    const Field f = make_field(p);
    for (Index m = 0; m < p; ++m) {
      const FieldElement mu(f, m);
      CAPTURE(p);
      CAPTURE(m);
      CHECK(count_x_table(mu).count == naive(quintic_x(mu)));
      CHECK(count_y_table(mu).count == naive(quintic_y(mu)));
    }
  }
  for (auto [p, k] : {std::pair{2ull, 2}, std::pair{3ull, 2}, std::pair{2ull, 3}}) {
    const Field f = make_field(p, k);
    for (Index m : {Index{1}, Index{2}, f.order() - 1}) {
      const FieldElement mu(f, m);
      CAPTURE(f.name());
      CAPTURE(m);
      CHECK(count_x_table(mu).count == naive(quintic_x(mu)));
      CHECK(count_y_table(mu).count == naive(quintic_y(mu)));
    }
  }
}

TEST_CASE("thread count does not change results") {
  const Field f = make_field(11);
  const FieldElement mu = f.element(3);
  CHECK(count_x_table(mu, 1).count == count_x_table(mu, 3).count);
  CHECK(count_y_table(mu, 1).count == count_y_table(mu, 4).count);
  CHECK(count_naive(quintic_x(mu), 1).count == count_naive(quintic_x(mu), 3).count);
}

TEST_CASE("naive refuses oversized instances") {
  const Field f = make_field(331);
  CHECK_THROWS_AS(count_naive(quintic_x(f.one())), Error);
  const Field big = make_field(8209);
  CHECK_THROWS_AS(count_x_table(big.one()), Error);
}

TEST_CASE("cache line round trip and corruption") {
  const Field f = make_field(7);
  const CountRecord r = count_x_table(f.one());
  const std::string line = to_cache_line(r);
  CHECK(line.rfind("{\"family\":\"X\",\"params\":\"mu=1\",\"p\":7,\"k\":1,\"count\":401,\"algo\":\"table\"", 0) == 0);
  CountRecord back = parse_cache_line(line);
  CHECK(back == r);
  CHECK_THROWS_AS(parse_cache_line("{\"family\":\"X\"}"), Error);
  CHECK_THROWS_AS(parse_cache_line("not json"), Error);
  CHECK_THROWS_AS(parse_cache_line(R"({"family":"Z","params":"","p":7,"k":1,"count":1,"algo":"table","elapsed_ms":0,"version":1})"),
                  Error);

  const auto path = std::filesystem::temp_directory_path() / "mql_cache_test.jsonl";
  std::filesystem::remove(path);
  CountTask task{quintic_x(f.one()), std::nullopt, 1};
  auto first = count_cached(task, path);
  CHECK_FALSE(first.hit);
  auto second = count_cached(task, path);
  CHECK(second.hit);
  CHECK(second.record.count == 401);
  { std::ofstream(path, std::ios::app) << "garbage\n"; }
  auto third = count_cached(task, path);
  CHECK_FALSE(third.hit);
  CHECK(third.warnings.size() == 1);
  CHECK(third.record.count == 401);
  std::filesystem::remove(path);
}

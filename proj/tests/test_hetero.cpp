#include "bgc/error.hpp"
#include "bgc/hetero.hpp"

#include <doctest.h>

#include <random>

using namespace bgc;

namespace {

WorkerTypeSpec spec(std::int64_t count, Rational time) { return {count, std::move(time)}; }

}  // namespace

TEST_CASE("two types") {
  const auto plan = plan_two_types(3, 12, spec(6, 1), spec(6, 2));
  REQUIRE(plan.real_loads.size() == 2);
  CHECK(plan.real_loads[0] == Rational(16, 3));
  CHECK(plan.real_loads[1] == Rational(8, 3));
  CHECK(1 * plan.real_loads[0] == 2 * plan.real_loads[1]);
  CHECK(6 * plan.real_loads[0] + 6 * plan.real_loads[1] == 48);
  CHECK(plan.warnings.empty());
  CHECK(*plan.equalization_error == 0);
}

TEST_CASE("two types with unequal counts use the reduced ratio") {
  const auto plan = plan_two_types(2, 9, spec(6, 1), spec(3, 3));
  // alpha/beta = 2/1: L1 = 27 * (2*3 / (2*3 + 1*1)) / 6 = 27/7, L2 = 27 * (1/7) / 3 = 9/7.
  CHECK(plan.real_loads[0] == Rational(27, 7));
  CHECK(plan.real_loads[1] == Rational(9, 7));
}

TEST_CASE("equal times give uniform loads") {
  const auto plan = plan_two_types(3, 12, spec(6, 2), spec(6, 2));
  CHECK(plan.real_loads[0] == 4);
  CHECK(plan.real_loads[1] == 4);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(plan_two_types(3, 12, spec(6, 1), spec(0, 2)), ParameterError);
  CHECK_THROWS_AS(plan_two_types(3, 12, spec(6, 0), spec(6, 2)), ParameterError);
  CHECK_THROWS_AS(plan_two_types(3, 12, spec(6, -1), spec(6, 2)), ParameterError);
  CHECK_THROWS_AS(plan_two_types(3, 12, spec(6, 2), spec(6, 1)), ParameterError);
  CHECK_THROWS_AS(plan_two_types(-1, 12, spec(6, 1), spec(6, 2)), ParameterError);
  CHECK_THROWS_AS(plan_m_types(3, 12, std::vector<WorkerTypeSpec>{}), ParameterError);
}

TEST_CASE("m types") {
  const std::vector<WorkerTypeSpec> three{spec(4, 1), spec(4, 2), spec(4, 4)};
  const auto plan = plan_m_types(2, 12, three);
  CHECK(plan.real_loads == std::vector<Rational>{Rational(36, 7), Rational(18, 7), Rational(9, 7)});

  const std::vector<WorkerTypeSpec> one{spec(8, 3)};
  CHECK(plan_m_types(3, 8, one).real_loads == std::vector<Rational>{4});

  const std::vector<WorkerTypeSpec> two{spec(6, 1), spec(6, 2)};
  const auto general = plan_m_types(3, 12, two);
  const auto closed = plan_two_types(3, 12, two[0], two[1]);
  CHECK(general.real_loads == closed.real_loads);
  CHECK(to_double(general.real_loads[0]) == to_double(closed.real_loads[0]));
}

TEST_CASE("warning when s+1 does not divide n") {
  const std::vector<WorkerTypeSpec> types{spec(5, 1), spec(6, 2)};
  CHECK(plan_m_types(3, 11, types).warnings.size() == 1);
}

TEST_CASE("rounding") {
  const auto plan = round_plan(plan_two_types(3, 12, spec(6, 1), spec(6, 2)));
  CHECK(plan.total_assigned == 48);
  CHECK(plan.worker_loads[0] == std::vector<std::int64_t>(6, 5));
  CHECK(plan.worker_loads[1] == std::vector<std::int64_t>(6, 3));
  // Expected times 5 and 6.
  CHECK(*plan.equalization_error == Rational(1, 5));

  const auto integral = round_plan(plan_two_types(3, 12, spec(6, 2), spec(6, 2)));
  CHECK(integral.worker_loads[0] == std::vector<std::int64_t>(6, 4));
  CHECK(integral.worker_loads[1] == std::vector<std::int64_t>(6, 4));
  CHECK(*integral.equalization_error == 0);

  const std::vector<WorkerTypeSpec> one{spec(8, 3)};
  CHECK(round_plan(plan_m_types(3, 8, one)).worker_loads[0] == std::vector<std::int64_t>(8, 4));

  // 36/7, 18/7, 9/7 with four workers each: floors 5, 2, 1 leave 36 - 32 = 4
  // units; fractions 1/7, 4/7, 2/7 send all four to the middle type.
  const std::vector<WorkerTypeSpec> three{spec(4, 1), spec(4, 2), spec(4, 4)};
  const auto r3 = round_plan(plan_m_types(2, 12, three));
  CHECK(r3.worker_loads[0] == std::vector<std::int64_t>(4, 5));
  CHECK(r3.worker_loads[1] == std::vector<std::int64_t>(4, 3));
  CHECK(r3.worker_loads[2] == std::vector<std::int64_t>(4, 1));
  CHECK(r3.total_assigned == 36);
}

TEST_CASE("rounding ties go to the faster type") {
  // Both loads 3/2 with equal times: one unit per type pair remains.
  const std::vector<WorkerTypeSpec> types{spec(1, 1), spec(1, 1)};
  const auto plan = round_plan(plan_m_types(0, 3, types));
  CHECK(plan.worker_loads[0] == std::vector<std::int64_t>{2});
  CHECK(plan.worker_loads[1] == std::vector<std::int64_t>{1});
}

TEST_CASE("random plans satisfy the allocation conditions") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = std::uniform_int_distribution<int>(1, 5)(rng);
    std::vector<WorkerTypeSpec> types;
    Rational time = 0;
    for (int i = 0; i < m; ++i) {
      time += Rational(std::uniform_int_distribution<int>(trial % 3 == 0 ? 0 : 1, 9)(rng),
                       std::uniform_int_distribution<int>(1, 4)(rng));
      if (time == 0) time = Rational(1, 2);
      types.push_back(spec(std::uniform_int_distribution<int>(1, 12)(rng), time));
    }
    const int s = std::uniform_int_distribution<int>(0, 6)(rng);
    const int k = std::uniform_int_distribution<int>(1, 40)(rng);
    const auto plan = plan_m_types(s, k, types);

    Rational total = 0;
    for (int i = 0; i < m; ++i) {
      total += plan.real_loads[i] * types[i].count;
      CHECK(types[i].unit_time * plan.real_loads[i] == types[0].unit_time * plan.real_loads[0]);
      if (i > 0) CHECK(plan.real_loads[i] <= plan.real_loads[i - 1]);
    }
    CHECK(total == (s + 1) * k);

    const auto rounded = round_plan(plan);
    CHECK(rounded.total_assigned == static_cast<std::int64_t>(s + 1) * k);
    for (int i = 1; i < m; ++i) {
      const auto& faster = rounded.worker_loads[i - 1];
      const auto& slower = rounded.worker_loads[i];
      CHECK(*std::min_element(faster.begin(), faster.end()) >= *std::max_element(slower.begin(), slower.end()));
    }
    for (int i = 0; i < m; ++i) {
      const auto [lo, hi] = std::minmax_element(rounded.worker_loads[i].begin(), rounded.worker_loads[i].end());
      CHECK(*hi - *lo <= 1);
    }
  }
}

TEST_CASE("parsing") {
  CHECK(parse_rational("16/3") == Rational(16, 3));
  CHECK(parse_rational("-2.75") == Rational(-11, 4));
  CHECK(parse_rational(" 4 ") == 4);
  CHECK(parse_rational("0.5/2") == Rational(1, 4));
  CHECK(parse_rational(".5") == Rational(1, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), FormatError);
  CHECK_THROWS_AS(parse_rational("abc"), FormatError);
  CHECK_THROWS_AS(parse_rational(""), FormatError);
  CHECK_THROWS_AS(parse_rational("."), FormatError);
  CHECK(to_string(Rational(16, 3)) == "16/3");
  CHECK(to_string(Rational(6)) == "6");

  const auto types = parse_type_list("6:1,6:2.5");
  REQUIRE(types.size() == 2);
  CHECK(types[1].count == 6);
  CHECK(types[1].unit_time == Rational(5, 2));
  CHECK_THROWS_AS(parse_type_list("6"), FormatError);
  CHECK_THROWS_AS(parse_type_list("1.5:2"), FormatError);
}

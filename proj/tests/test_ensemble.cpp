#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/distributions/students_t.hpp>
#include <doctest.h>

#include "acv/ensemble.hpp"
#include "acv/error.hpp"
#include "oracles.hpp"

using namespace acv;
using namespace acv::ensemble;

namespace {

constexpr std::size_t kDraws = 1'000'000;

std::vector<double> draws(const EntryDistribution& d, std::uint64_t seed, std::size_t n = kDraws) {
  const auto panel = sample_panel(make_sampler(d), 1, n, 0, seed);
  const auto row = panel.entries.row(0);
  return {row.begin(), row.end()};
}

}  // namespace

TEST_SUITE("ensemble") {

TEST_CASE("gaussian draws are standardized") {
  const auto m = oracle::sample_moments(draws(EntryDistribution::gaussian(), 1));
  CHECK(std::abs(m.mean) < 0.004);
  CHECK(std::abs(m.variance - 1.0) < 0.01);
}

TEST_CASE("rademacher draws are signs with unit fourth moment") {
  const auto x = draws(EntryDistribution::rademacher(), 2);
  double fourth = 0.0;
  for (double v : x) {
    REQUIRE((v == 1.0 || v == -1.0));
    fourth += v * v * v * v;
  }
  CHECK(fourth / x.size() == 1.0);
}

TEST_CASE("student t(5) is rescaled from variance 5/3 to 1") {
  const auto d = EntryDistribution::student_t(5.0);
  const auto x = draws(d, 3);
  const auto m = oracle::sample_moments(x);
  // Var t_nu = nu / (nu - 2); undo the sqrt((nu - 2)/nu) scaling.
  const double raw_var = m.variance * 5.0 / 3.0;
  CHECK(raw_var == doctest::Approx(5.0 / 3.0).epsilon(0.03));
  CHECK(std::abs(m.mean) < 0.01);
  CHECK(m.variance > 0.97);
  CHECK(m.variance < 1.03);
}

TEST_CASE("every supported law is standardized (1e6 draws)") {
  const std::vector<EntryDistribution> laws{
      EntryDistribution::gaussian(),
      EntryDistribution::rademacher(),
      EntryDistribution::uniform(),
      EntryDistribution::student_t(5.0),
      EntryDistribution::student_t(9.5),
      truncate_spec(EntryDistribution::gaussian(), 3.0),
      truncate_spec(EntryDistribution::gaussian(), 0.7),
      truncate_spec(EntryDistribution::uniform(), 1.2),
      truncate_spec(EntryDistribution::student_t(5.0), light_truncation_threshold(4096)),
      truncate_spec(EntryDistribution::student_t(5.0), heavy_truncation_threshold(4096)),
  };
  std::uint64_t seed = 100;
  for (const auto& d : laws) {
    CAPTURE(d.tag());
    const auto m = oracle::sample_moments(draws(d, seed++));
    CHECK(std::abs(m.mean) <= 0.01);
    CHECK(m.variance >= 0.97);
    CHECK(m.variance <= 1.03);
  }
}

TEST_CASE("truncated gaussian at 3: bounded support, mean/variance within 3 SE") {
  const auto d = truncate_spec(EntryDistribution::gaussian(), 3.0);
  const auto sampler = make_sampler(d);
  const auto bound = sampler.support_bound();
  REQUIRE(bound.has_value());
  const auto x = draws(d, 4);
  for (double v : x) REQUIRE(std::abs(v) <= *bound);
  const auto m = oracle::sample_moments(x);
  const double n = static_cast<double>(x.size());
  const double se_mean = 1.0 / std::sqrt(n);
  const double se_var = std::sqrt((entry_moment(d, 4) - 1.0) / n);
  CHECK(std::abs(m.mean) < 3.0 * se_mean);
  CHECK(std::abs(m.variance - 1.0) < 3.0 * se_var);
}

TEST_CASE("truncation support bound holds exactly for every draw") {
  for (const auto& d : {truncate_spec(EntryDistribution::student_t(5.0), 2.0),
                        truncate_spec(EntryDistribution::gaussian(), 1.5),
                        truncate_spec(EntryDistribution::uniform(), 0.5)}) {
    const auto s = make_sampler(d);
    const double threshold = *d.truncate_at;
    const double sd = std::sqrt(truncated_moments(EntryDistribution{d.family, d.nu, {}}, threshold).variance);
    CHECK(*s.support_bound() == doctest::Approx(threshold / sd).epsilon(1e-14));
    for (double v : draws(d, 5, 200'000)) REQUIRE(std::abs(v) <= *s.support_bound());
  }
}

TEST_CASE("rademacher truncated at 2 is unchanged") {
  const auto d = truncate_spec(EntryDistribution::rademacher(), 2.0);
  const auto a = make_sampler(d);
  const auto b = make_sampler(EntryDistribution::rademacher());
  for (std::uint64_t c = 0; c < 1000; ++c) REQUIRE(a.draw(9, 0, c) == b.draw(9, 0, c));
  CHECK(entry_moment(d, 4) == 1.0);
}

TEST_CASE("light truncation default for T = 4096 is 2^1.5") {
  CHECK(light_truncation_threshold(4096) == doctest::Approx(std::pow(2.0, 1.5)).epsilon(1e-14));
  CHECK(light_truncation_threshold(4096) == doctest::Approx(2.8284).epsilon(1e-4));
  CHECK(heavy_truncation_threshold(4096) == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(light_truncation_threshold(4096, 0.5) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("entry moments") {
  CHECK(entry_moment(EntryDistribution::gaussian(), 4) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(entry_moment(EntryDistribution::rademacher(), 4) == 1.0);
  CHECK(entry_moment(EntryDistribution::uniform(), 4) == doctest::Approx(9.0 / 5.0).epsilon(1e-14));

  SUBCASE("student t(5) fourth moment is 9, cross-checked by quadrature") {
    const double closed = entry_moment(EntryDistribution::student_t(5.0), 4);
    CHECK(closed == doctest::Approx(9.0).epsilon(1e-12));
    const double a = std::sqrt(3.0 / 5.0);
    const boost::math::students_t_distribution<double> t(5.0);
    const double quad = 2.0 * oracle::tanh_sinh(
        [&](double x) {
          // pow overflows before the density underflows far in the tail.
          return x > 1e30 ? 0.0 : std::pow(x, 4) * boost::math::pdf(t, x / a) / a;
        }, 0.0,
        std::numeric_limits<double>::infinity());
    CHECK(quad == doctest::Approx(9.0).epsilon(1e-8));
  }

  SUBCASE("second moment is 1 for every standardized law") {
    for (const auto& d : {EntryDistribution::gaussian(), EntryDistribution::rademacher(),
                          EntryDistribution::uniform(), EntryDistribution::student_t(4.5),
                          truncate_spec(EntryDistribution::gaussian(), 0.3),
                          truncate_spec(EntryDistribution::uniform(), 1.0),
                          truncate_spec(EntryDistribution::student_t(5.0), 2.5)}) {
      CAPTURE(d.tag());
      CHECK(std::abs(entry_moment(d, 2) - 1.0) < 1e-8);
    }
  }

  SUBCASE("truncated gaussian fourth moment matches an independent quadrature") {
    const double c = 1.7;
    const auto d = truncate_spec(EntryDistribution::gaussian(), c);
    auto phi = [](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); };
    const double m2 = 2.0 * oracle::tanh_sinh([&](double x) { return x * x * phi(x); }, 0.0, c);
    const double m4 = 2.0 * oracle::tanh_sinh([&](double x) { return std::pow(x, 4) * phi(x); }, 0.0, c);
    CHECK(entry_moment(d, 4) == doctest::Approx(m4 / (m2 * m2)).epsilon(1e-9));
  }

  CHECK_THROWS_AS(entry_moment(EntryDistribution::student_t(5.0), 5), DomainError);
  CHECK_THROWS_AS(entry_moment(EntryDistribution::gaussian(), 0), DomainError);
  // Truncated heavy-tailed laws have every moment.
  CHECK(std::isfinite(entry_moment(truncate_spec(EntryDistribution::student_t(5.0), 3.0), 8)));
}

TEST_CASE("configuration errors") {
  CHECK_THROWS_AS(make_sampler(EntryDistribution::student_t(4.0)), ConfigError);
  CHECK_THROWS_AS(make_sampler(EntryDistribution::student_t(3.0)), ConfigError);
  CHECK_THROWS_AS(truncate_spec(EntryDistribution::gaussian(), 0.0), ConfigError);
  CHECK_THROWS_AS(truncate_spec(EntryDistribution::gaussian(), -1.0), ConfigError);
  CHECK_THROWS_AS(truncate_spec(EntryDistribution::rademacher(), 0.5), DegenerateTruncationError);
  CHECK_THROWS_AS(truncate_spec(EntryDistribution::uniform(), 1e-5), DegenerateTruncationError);
  CHECK_THROWS_AS(parse_distribution("cauchy"), ConfigError);
  CHECK_THROWS_AS(parse_distribution("student_t"), ConfigError);
  CHECK_THROWS_AS(parse_distribution("gaussian:3"), ConfigError);
  CHECK_THROWS_AS(parse_distribution("gaussian@x"), ConfigError);
}

TEST_CASE("compact distribution tags round-trip") {
  for (const auto& d : {EntryDistribution::gaussian(), EntryDistribution::student_t(5.5),
                        truncate_spec(EntryDistribution::student_t(5.0), light_truncation_threshold(4096)),
                        truncate_spec(EntryDistribution::uniform(), 0.1)}) {
    CHECK(parse_distribution(d.tag()) == d);
  }
  CHECK(EntryDistribution::student_t(5.0).tag() == "student_t:5");
}

TEST_CASE("panels are reproducible and order independent") {
  const auto sampler = make_sampler(EntryDistribution::gaussian());
  const auto a = sample_panel(sampler, 2, 3, 1, 42);
  const auto b = sample_panel(sampler, 2, 3, 1, 42);
  CHECK(a.entries.rows() == 2);
  CHECK(a.entries.cols() == 4);
  CHECK(a.entries == b.entries);

  const auto c = sample_panel(sampler, 2, 3, 1, 43);
  CHECK(!(a.entries == c.entries));

  const auto one = sample_panel(sampler, 1, 1, 0, 0);
  CHECK(one.entries.rows() == 1);
  CHECK(one.entries.cols() == 1);

  // A larger panel with the same seed contains the smaller one.
  const auto big = sample_panel(sampler, 5, 10, 2, 42);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t t = 0; t < 4; ++t) CHECK(big.entries(i, t) == a.entries(i, t));
}

TEST_CASE("panel size limit") {
  const auto sampler = make_sampler(EntryDistribution::gaussian());
  CHECK_THROWS_AS(sample_panel(sampler, 100, 100, 1, 0, 10'000), ResourceError);
  CHECK_NOTHROW(sample_panel(sampler, 100, 99, 1, 0, 10'000));
  CHECK_THROWS_AS(sample_panel(sampler, 0, 10, 1, 0), ConfigError);
  CHECK_THROWS_AS(sample_panel(sampler, std::size_t{1} << 40, std::size_t{1} << 40, 1, 0), ResourceError);
}

TEST_CASE("normal quantile accuracy") {
  // Phi(q(u)) = u to near double precision after refinement.
  for (double u : {1e-12, 1e-6, 0.01, 0.02425, 0.3, 0.5, 0.77, 0.99, 1.0 - 1e-9}) {
    const double x = rng::normal_quantile(u);
    const double back = 0.5 * std::erfc(-x / std::numbers::sqrt2);
    CHECK(std::abs(back - u) <= 1e-14 * std::max(u, 1e-3));
  }
  CHECK(rng::normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-15));
}

}  // TEST_SUITE

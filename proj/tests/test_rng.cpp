#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hhc/rng.hpp"

using namespace hhc;

TEST_CASE("streams are reproducible and label-separated") {
  auto a = Rng::stream(42, "alpha", 0);
  auto b = Rng::stream(42, "alpha", 0);
  auto c = Rng::stream(42, "beta", 0);
  auto d = Rng::stream(43, "alpha", 0);
  CHECK(a.next_u64() == b.next_u64());
  CHECK(a.next_u64() == b.next_u64());
  auto e = Rng::stream(42, "alpha", 0);
  CHECK(e.next_u64() != c.next_u64());
  CHECK(Rng::stream(42, "alpha", 0).next_u64() != d.next_u64());
  CHECK(Rng::stream(42, "alpha", 1).next_u64() != Rng::stream(42, "alpha", 2).next_u64());
}

TEST_CASE("uniform draws respect their bounds") {
  auto r = Rng::stream(7, "bounds", 0);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.uniform();
    CHECK(u >= 0);
    CHECK(u < 1);
    const int k = r.uniform_int(3, 9);
    CHECK(k >= 3);
    CHECK(k <= 9);
    const double x = r.uniform_real(-2, 5);
    CHECK(x >= -2);
    CHECK(x < 5);
    CHECK(r.uniform_index(10) < 10);
  }
  auto s = Rng::stream(7, "const", 0);
  CHECK(s.uniform_int(4, 4) == 4);
}

TEST_CASE("normal sampling matches its moments roughly") {
  auto r = Rng::stream(11, "normal", 0);
  const int trials = 20000;
  double sum = 0, sq = 0;
  for (int i = 0; i < trials; ++i) {
    const double x = r.normal(10, 2);
    sum += x;
    sq += x * x;
  }
  const double mean = sum / trials;
  const double var = sq / trials - mean * mean;
  CHECK(mean == doctest::Approx(10).epsilon(0.01));
  CHECK(std::sqrt(var) == doctest::Approx(2).epsilon(0.05));
}

TEST_CASE("bernoulli edge probabilities") {
  auto r = Rng::stream(3, "bern", 0);
  for (int i = 0; i < 100; ++i) {
    CHECK_FALSE(r.bernoulli(0.0));
    CHECK(r.bernoulli(1.0));
  }
}

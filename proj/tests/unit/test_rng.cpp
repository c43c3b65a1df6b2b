#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "rrk/rng.hpp"

TEST_CASE("draws are pure functions of seed, trial, interval, counter") {
  rrk::RandomStream a(42, 7, 3);
  rrk::RandomStream b(42, 7, 3);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.next() == b.next());
  }
  CHECK(a.value_at(1000) == b.value_at(1000));
  // value_at never advances the stream.
  CHECK(a.counter() == 100);
}

TEST_CASE("next replays value_at in counter order") {
  rrk::RandomStream s(5, 0, 1);
  const rrk::RandomStream frozen(5, 0, 1);
  for (std::uint64_t i = 0; i < 64; ++i) {
    CHECK(s.next() == frozen.value_at(i));
  }
}

TEST_CASE("changing any stream coordinate changes the draws") {
  const rrk::RandomStream base(1, 2, 3);
  CHECK(base.value_at(0) != rrk::RandomStream(2, 2, 3).value_at(0));
  CHECK(base.value_at(0) != rrk::RandomStream(1, 3, 3).value_at(0));
  CHECK(base.value_at(0) != rrk::RandomStream(1, 2, 4).value_at(0));
  CHECK(base.value_at(0) != base.value_at(1));
}

TEST_CASE("draws lie strictly inside the open unit interval") {
  rrk::RandomStream s(0, 0, 0);
  double lo = 1.0;
  double hi = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rrk::draw_uniform(s);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo > 0.0);
  CHECK(hi < 1.0);
  // With 1e5 draws the extremes should approach the ends.
  CHECK(lo < 1e-3);
  CHECK(hi > 1.0 - 1e-3);
}

TEST_CASE("empirical distribution is uniform") {
  const int n = 100000;
  rrk::RandomStream s(0, 0, 0);
  std::vector<double> u(n);
  for (double& v : u) {
    v = s.next();
  }

  double mean = 0.0;
  for (double v : u) {
    mean += v;
  }
  mean /= n;
  CHECK(std::abs(mean - 0.5) < 0.005);

  // Kolmogorov-Smirnov against the uniform CDF; 1.63/sqrt(n) is the 1%
  // critical value. The stream is fixed, so this never flakes.
  std::sort(u.begin(), u.end());
  double d = 0.0;
  for (int i = 0; i < n; ++i) {
    d = std::max(d, std::abs(u[i] - (i + 0.5) / n));
  }
  CHECK(d < 1.63 / std::sqrt(static_cast<double>(n)) + 0.5 / n);
}

TEST_CASE("successive draws are uncorrelated") {
  const int n = 100000;
  rrk::RandomStream s(123, 4, 0);
  double prev = s.next();
  double sum = 0.0;
  for (int i = 1; i < n; ++i) {
    const double cur = s.next();
    sum += (prev - 0.5) * (cur - 0.5);
    prev = cur;
  }
  // Variance of the product terms is 1/144; the mean has sd ~ 2.6e-4.
  CHECK(std::abs(sum / (n - 1)) < 1.5e-3);
}

TEST_CASE("substream matches stream construction") {
  auto s = rrk::substream(9, 8, 7);
  const rrk::RandomStream direct(9, 8, 7);
  CHECK(s.next() == direct.value_at(0));
}

TEST_CASE("trial draws index substreams by interval and step") {
  rrk::TrialDraws draws(11, 5);
  for (int j = 0; j < 3; ++j) {
    const rrk::RandomStream stream(11, 5, static_cast<std::uint64_t>(j));
    for (int k = 0; k < 10; ++k) {
      CHECK(draws.gamma(j, k) == stream.value_at(static_cast<std::uint64_t>(k)));
    }
  }
}

TEST_CASE("constant draws ignore their arguments") {
  rrk::ConstantDraws draws(0.25);
  CHECK(draws.gamma(0, 0) == 0.25);
  CHECK(draws.gamma(7, 99) == 0.25);
}

TEST_CASE("perturbed draws override exactly one entry") {
  rrk::TrialDraws plain(3, 1);
  rrk::PerturbedDraws bumped(3, 1, 1, 4, 0.75);
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 8; ++k) {
      if (j == 1 && k == 4) {
        CHECK(bumped.gamma(j, k) == 0.75);
      } else {
        CHECK(bumped.gamma(j, k) == plain.gamma(j, k));
      }
    }
  }
}

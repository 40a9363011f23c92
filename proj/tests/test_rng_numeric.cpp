#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "fuzzy_potts/numeric.hpp"
#include "fuzzy_potts/rng.hpp"

using namespace fuzzy_potts;

TEST_CASE("philox4x32-10 known-answer vectors") {
  // Reference vectors from the published test set of the generator.
  const Philox::Block zero = Philox::encrypt({0, 0, 0, 0}, {0, 0});
  CHECK(zero == Philox::Block{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});

  const Philox::Block ones = Philox::encrypt(
      {0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
      {0xffffffffu, 0xffffffffu});
  CHECK(ones == Philox::Block{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});

  const Philox::Block pi = Philox::encrypt(
      {0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
      {0xa4093822u, 0x299f31d0u});
  CHECK(pi == Philox::Block{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("philox streams are deterministic and distinct") {
  Philox a(42, 0), b(42, 0), c(42, 1);
  std::vector<std::uint64_t> xs, ys, zs;
  for (int i = 0; i < 64; ++i) {
    xs.push_back(a.next_u64());
    ys.push_back(b.next_u64());
    zs.push_back(c.next_u64());
  }
  CHECK(xs == ys);
  CHECK(xs != zs);
}

TEST_CASE("uniform01 lands in [0,1) with sane mean") {
  Philox rng(7, 3);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(std::fabs(sum / n - 0.5) < 0.005);
}

TEST_CASE("uniform_below is unbiased enough for small n") {
  Philox rng(11, 0);
  std::vector<int> hist(3, 0);
  const int n = 90000;
  for (int i = 0; i < n; ++i) ++hist[rng.uniform_below(3)];
  for (int h : hist) CHECK(std::fabs(h - n / 3.0) < 5.0 * std::sqrt(n / 3.0));
}

TEST_CASE("log-sum-exp matches direct sums and survives huge terms") {
  LogSumExp acc;
  acc.add(std::log(2.0));
  acc.add(std::log(3.0));
  acc.add(std::log(5.0));
  CHECK(acc.value() == doctest::Approx(std::log(10.0)).epsilon(1e-14));

  LogSumExp big;
  big.add(1000.0);
  big.add(1000.0 + std::log(2.0));
  CHECK(big.value() == doctest::Approx(1000.0 + std::log(3.0)).epsilon(1e-14));

  LogSumExp empty;
  CHECK(std::isinf(empty.value()));
}

TEST_CASE("composition enumeration is complete and distinct") {
  std::vector<std::int64_t> k{5, 0, 0};
  std::set<std::vector<std::int64_t>> seen;
  do {
    std::int64_t sum = 0;
    for (auto v : k) {
      REQUIRE(v >= 0);
      sum += v;
    }
    REQUIRE(sum == 5);
    seen.insert(k);
  } while (next_composition(k));
  CHECK(seen.size() == 21);  // C(7,2)
  CHECK(composition_count(5, 3) == doctest::Approx(21.0));
}

TEST_CASE("log factorial table") {
  const auto t = log_factorial_table(10);
  CHECK(t[0] == 0.0);
  CHECK(t[1] == 0.0);
  CHECK(t[5] == doctest::Approx(std::log(120.0)).epsilon(1e-14));
  CHECK(t[10] == doctest::Approx(std::log(3628800.0)).epsilon(1e-14));
}

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "zonal/parallel.hpp"
#include "zonal/random.hpp"

using namespace zonal;

TEST_CASE("Philox4x32-10 known-answer vectors") {
  using A4 = std::array<std::uint32_t, 4>;
  using A2 = std::array<std::uint32_t, 2>;
  CHECK(philox4x32(A4{0, 0, 0, 0}, A2{0, 0}) == A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32(A4{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, A2{0xffffffff, 0xffffffff}) ==
        A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32(A4{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, A2{0xa4093822, 0x299f31d0}) ==
        A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are addressable and distinct") {
  const RandomStream a(11, "alpha");
  const RandomStream b(11, "beta");
  CHECK(a.uniform(5, 0, 0) == RandomStream(11, "alpha").uniform(5, 0, 0));
  CHECK(a.uniform(5, 0, 0) != b.uniform(5, 0, 0));
  CHECK(a.uniform(5, 0, 0) != a.uniform(6, 0, 0));
  CHECK(a.uniform(5, 0, 0) != a.child(1).uniform(5, 0, 0));
  CHECK(a.master_seed() == 11);
}

TEST_CASE("uniform and normal moments") {
  const RandomStream s(kDefaultSeed, "moments");
  const int m = 200000;
  double su = 0.0, sn = 0.0, sn2 = 0.0;
  for (int i = 0; i < m; ++i) {
    const double u = s.uniform(i, 0, 0);
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    su += u;
    const auto z = s.normal_pair(i, 1);
    sn += z[0] + z[1];
    sn2 += z[0] * z[0] + z[1] * z[1];
  }
  CHECK(std::abs(su / m - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / m));
  CHECK(std::abs(sn / (2.0 * m)) < 4.0 / std::sqrt(2.0 * m));
  CHECK(std::abs(sn2 / (2.0 * m) - 1.0) < 4.0 * std::sqrt(2.0 / (2.0 * m)));
}

TEST_CASE("batch plan depends only on the sample count") {
  const BatchPlan p = plan_batches(1000000);
  CHECK(p.batches == 64);
  CHECK(p.begin(0) == 0);
  CHECK(p.end(p.batches - 1) == 1000000);
  for (std::size_t b = 1; b < p.batches; ++b) CHECK(p.begin(b) == p.end(b - 1));
  CHECK(plan_batches(100).batches == 1);
  CHECK(plan_batches(40000).batches == 9);
}

TEST_CASE("parallel_for propagates exceptions") {
  setenv("ZONAL_THREADS", "3", 1);
  CHECK(thread_count() == 3);
  CHECK_THROWS_AS(parallel_for(10, [](std::size_t t) {
                    if (t == 7) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
  unsetenv("ZONAL_THREADS");
}

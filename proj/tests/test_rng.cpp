#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "shadows/rng.hpp"

using namespace shadows;

TEST_CASE("philox 4x32-10 known-answer vectors") {
  using philox::Block;
  using philox::Key;
  CHECK(philox::block(Key{0u, 0u}, Block{0u, 0u, 0u, 0u}) ==
        Block{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  CHECK(philox::block(Key{0xffffffffu, 0xffffffffu},
                      Block{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}) ==
        Block{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  CHECK(philox::block(Key{0xa4093822u, 0x299f31d0u},
                      Block{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}) ==
        Block{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("streams are reproducible and distinct") {
  SampleRng a(123, 5), b(123, 5), c(123, 6), d(124, 5);
  double first_a = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double u = a.uniform();
    if (i == 0) first_a = u;
    CHECK(u == b.uniform());
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK(first_a != c.uniform());
  CHECK(first_a != d.uniform());
}

TEST_CASE("uniform_open never returns zero") {
  SampleRng rng(9, 0);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform_open();
    CHECK(u > 0.0);
    CHECK(u <= 1.0);
  }
}

TEST_CASE("normals have standard moments") {
  SampleRng rng(77, 0);
  const int n = 100000;
  double s1 = 0.0, s2 = 0.0, s4 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    s1 += z;
    s2 += z * z;
    s4 += z * z * z * z;
  }
  const double mean = s1 / n;
  const double var = s2 / n;
  const double kurt = s4 / n;
  CHECK(std::abs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(var - 1.0) < 4.0 * std::sqrt(2.0 / n));
  CHECK(std::abs(kurt - 3.0) < 4.0 * std::sqrt(96.0 / n));
}

TEST_CASE("derive_seed separates tagged streams") {
  CHECK(derive_seed(1, 1) != derive_seed(1, 2));
  CHECK(derive_seed(1, 1) != derive_seed(2, 1));
  CHECK(derive_seed(42, 7) == derive_seed(42, 7));
}

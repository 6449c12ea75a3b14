#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "sprt/philox.hpp"

using namespace sprt;

// Known-answer vectors cross-checked against numpy's Philox4x64-10
// implementation (numpy.random.Philox with the same key and counter).
TEST_CASE("philox4x64-10 known-answer vectors") {
  {
    const PhiloxBlock b = philox4x64({0, 0, 0, 0}, {0, 0});
    CHECK(b.words[0] == 0x16554d9eca36314cull);
    CHECK(b.words[1] == 0xdb20fe9d672d0fdcull);
    CHECK(b.words[2] == 0xd7e772cee186176bull);
    CHECK(b.words[3] == 0x7e68b68aec7ba23bull);
  }
  {
    const PhiloxBlock b = philox4x64({1, 2, 3, 4}, {0xdeadbeefull, 0x12345678ull});
    CHECK(b.words[0] == 0x2f4018d2afbff22cull);
    CHECK(b.words[1] == 0x697db4e237592c1aull);
    CHECK(b.words[2] == 0x52bfae32b5dc8a48ull);
    CHECK(b.words[3] == 0x0aff7f4e07a857bdull);
  }
  {
    const std::uint64_t ff = ~0ull;
    const PhiloxBlock b = philox4x64({ff, ff, ff, ff}, {ff, ff});
    CHECK(b.words[0] == 0x87b092c3013fe90bull);
    CHECK(b.words[1] == 0x438c3c67be8d0224ull);
    CHECK(b.words[2] == 0x9cc7d7c69cd777b6ull);
    CHECK(b.words[3] == 0xa09caebf594f0ba0ull);
  }
}

TEST_CASE("stream replays the raw blocks in counter order") {
  PhiloxStream s(42, 7, 1);
  for (std::uint64_t block = 0; block < 3; ++block) {
    const PhiloxBlock b =
        philox4x64({block, 1, 7, 0}, {42, 0xDA3E39CB94B95BDBull});
    for (int i = 0; i < 4; ++i) CHECK(s.next_u64() == b.words[i]);
  }
}

TEST_CASE("streams with distinct ids or substreams do not collide") {
  PhiloxStream a(9, 0, 0), b(9, 1, 0), c(9, 0, 1);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 64; ++i) {
    seen.insert(a.next_u64());
    seen.insert(b.next_u64());
    seen.insert(c.next_u64());
  }
  CHECK(seen.size() == 3 * 64);
}

TEST_CASE("identical construction gives identical streams") {
  PhiloxStream a(123, 456, 1), b(123, 456, 1);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("uniform deviates live strictly inside (0,1)") {
  PhiloxStream s(0, 0, 0);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = s.next_u01();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  CHECK(lo < 1e-4);
  CHECK(hi > 1.0 - 1e-4);
  CHECK(std::fabs(sum / n - 0.5) < 0.005);
}

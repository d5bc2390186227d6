#include "doctest.h"

#include <vector>

#include "cohlab/errors.hpp"
#include "cohlab/pairing.hpp"

using namespace cohlab;

TEST_CASE("pairing base cases") {
  CHECK(pair_u64(0, 0) == 0);
  // Closed form (x+y)(x+y+1)/2 + x at (1,0): 1*2/2 + 1 = 2.
  CHECK(pair_u64(1, 0) == 2);
  CHECK(pair_u64(0, 1) == 1);
}

TEST_CASE("unpair inverts pair exhaustively below 100") {
  for (u64 x = 0; x < 100; ++x) {
    for (u64 y = 0; y < 100; ++y) {
      auto [a, b] = unpair_u64(pair_u64(x, y));
      CHECK(a == x);
      CHECK(b == y);
    }
  }
}

TEST_CASE("pair is a bijection on an initial segment") {
  std::vector<bool> hit(5050, false);
  for (u64 x = 0; x < 100; ++x) {
    for (u64 y = 0; y < 100; ++y) {
      u64 v = pair_u64(x, y);
      if (v < hit.size()) {
        CHECK(!hit[v]);
        hit[v] = true;
      }
    }
  }
  for (u64 v = 0; v < 5050; ++v) CHECK(hit[v]);
}

TEST_CASE("big-number pairing agrees with the word-sized one") {
  u64 seed = 12345;
  for (int i = 0; i < 200; ++i) {
    seed = seed * 6364136223846793005ull + 1442695040888963407ull;
    u64 x = (seed >> 20) & 0xffff;
    u64 y = (seed >> 40) & 0xffff;
    CHECK(pair_nat(Nat(x), Nat(y)) == Nat(pair_u64(x, y)));
    auto [a, b] = unpair_nat(Nat(pair_u64(x, y)));
    CHECK(a == Nat(x));
    CHECK(b == Nat(y));
  }
}

TEST_CASE("pairing overflow is an error, not a wrap") {
  CHECK_THROWS_AS(pair_u64(~u64{0}, ~u64{0}), EncodeError);
}

TEST_CASE("triples are monotone in each coordinate") {
  CHECK(triple_u64(0, 0, 0) < triple_u64(1, 0, 0));
  CHECK(triple_u64(3, 4, 0) < triple_u64(3, 5, 0));
  CHECK(triple_u64(3, 4, 1) < triple_u64(4, 5, 0));
}

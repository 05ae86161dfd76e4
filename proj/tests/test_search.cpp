#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "fcgrid/errors.hpp"
#include "fcgrid/search.hpp"
#include "oracle.hpp"

using namespace fcgrid;
using fcgrid::testing::halving_depth;
using fcgrid::testing::scan_predecessor;

TEST(StrictPredecessor, FixtureGrid) {
  const std::vector<double> grid{1, 2, 3, 4, 5};
  ASSERT_EQ(scan_predecessor(grid, 3.2), 2);
  EXPECT_EQ(strict_predecessor(grid, 3.2), 2);
  EXPECT_EQ(strict_predecessor(grid, 0.0), -1);
  EXPECT_EQ(strict_predecessor(grid, 7.0), 4);
  EXPECT_EQ(strict_predecessor(grid, 1.0), 0);
  EXPECT_EQ(strict_predecessor(grid, 5.0), 4);
}

TEST(StrictPredecessor, DuplicatesReturnLastAmongEquals) {
  const std::vector<double> grid{1, 2, 2, 2, 5};
  EXPECT_EQ(strict_predecessor(grid, 2.0), 3);
  EXPECT_EQ(strict_predecessor(grid, std::nextafter(2.0, 0.0)), 0);
}

TEST(StrictPredecessor, SingleElement) {
  const std::vector<double> grid{3};
  EXPECT_EQ(strict_predecessor(grid, 2.9), -1);
  EXPECT_EQ(strict_predecessor(grid, 3.0), 0);
  std::size_t comparisons = 0;
  strict_predecessor_counted(grid, 1.0, comparisons);
  EXPECT_EQ(comparisons, 1u);
}

TEST(StrictPredecessor, NanKeyRejected) {
  const std::vector<double> grid{1, 2};
  EXPECT_THROW(strict_predecessor(grid, std::numeric_limits<double>::quiet_NaN()), InvalidArgument);
}

TEST(StrictPredecessor, InfiniteKeysClampToEnds) {
  const std::vector<double> grid{1, 2, 3};
  EXPECT_EQ(strict_predecessor(grid, -std::numeric_limits<double>::infinity()), -1);
  EXPECT_EQ(strict_predecessor(grid, std::numeric_limits<double>::infinity()), 2);
}

TEST(SearchDepth, MatchesHalving) {
  for (std::size_t n = 1; n < 5000; ++n) ASSERT_EQ(search_depth(n), halving_depth(n)) << n;
}

// Every size up to 300, every gap key: result equals the scan and the
// comparison count is exactly floor(log2 n) + 1.
TEST(StrictPredecessor, ExhaustiveSmallSizesAgainstScan) {
  std::mt19937_64 rng(11);
  for (std::size_t n = 1; n <= 300; ++n) {
    std::vector<double> grid(n);
    std::uniform_int_distribution<int> step(0, 2);
    double v = 0;
    for (double& x : grid) x = (v += step(rng));
    for (double key = -1.0; key <= v + 1.0; key += 0.5) {
      std::size_t comparisons = 0;
      ASSERT_EQ(strict_predecessor_counted(grid, key, comparisons), scan_predecessor(grid, key))
          << "n=" << n << " key=" << key;
      ASSERT_EQ(comparisons, halving_depth(n)) << "n=" << n;
    }
  }
}

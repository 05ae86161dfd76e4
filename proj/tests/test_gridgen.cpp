#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fcgrid/cascade.hpp"
#include "fcgrid/errors.hpp"
#include "fcgrid/grid_io.hpp"
#include "fcgrid/gridgen.hpp"

using namespace fcgrid;

TEST(GenerateGridset, Deterministic) {
  GenSpec spec{3, 8, 8, 1e-5, 2e7, 0.0, 42, true};
  const GeneratedGrids a = generate_gridset(spec);
  const GeneratedGrids b = generate_gridset(spec);
  EXPECT_EQ(a.grids, b.grids);
  EXPECT_EQ(a.sigma, b.sigma);
  EXPECT_EQ(write_document({a.grids, a.sigma}), write_document({b.grids, b.sigma}));
  spec.seed = 43;
  EXPECT_NE(generate_gridset(spec).grids, a.grids);
}

TEST(GenerateGridset, RespectsSpec) {
  const GenSpec spec{10, 20, 300, 1e-3, 1e6, 0.0, 5, true};
  const GeneratedGrids gen = generate_gridset(spec);
  ASSERT_EQ(gen.grids.k(), 10u);
  ASSERT_TRUE(gen.sigma);
  EXPECT_NO_THROW(check_gridset(gen.grids));
  for (std::size_t g = 0; g < gen.grids.k(); ++g) {
    const auto& v = gen.grids.grids[g].values;
    EXPECT_GE(v.size(), 20u);
    EXPECT_LE(v.size(), 300u);
    EXPECT_GE(v.front(), 1e-3);
    EXPECT_LE(v.back(), 1e6);
    for (std::size_t t = 1; t < v.size(); ++t) EXPECT_LT(v[t - 1], v[t]);
    ASSERT_EQ((*gen.sigma)[g].size(), v.size());
    for (double s : (*gen.sigma)[g]) EXPECT_GT(s, 0.0);
  }
}

TEST(GenerateGridset, DuplicatesAreAdjacentAndApproximate) {
  const GenSpec spec{5, 200, 200, 1e-5, 2e7, 0.2, 12};
  const GridSet grids = generate_gridset(spec).grids;
  for (const auto& g : grids.grids) {
    std::size_t doubled = 0;
    for (std::size_t t = 1; t < g.size(); ++t) doubled += g.values[t] == g.values[t - 1];
    EXPECT_EQ(doubled, 40u);
  }
}

TEST(GenerateGridset, SinglePoint) {
  const GridSet grids = generate_gridset({1, 1, 1, 1e-5, 2e7, 0.5, 1}).grids;
  ASSERT_EQ(grids.k(), 1u);
  ASSERT_EQ(grids.grids[0].size(), 1u);
  const CascadeGrid cascade = build_cascade(grids);
  EXPECT_TRUE(validate_structure(cascade, grids).empty());
  EXPECT_EQ(cascade.lookup(0.0).indices, std::vector<std::size_t>{0});
  EXPECT_EQ(cascade.lookup(3e7).indices, std::vector<std::size_t>{0});
}

TEST(GenerateGridset, InvalidSpecs) {
  EXPECT_THROW(generate_gridset({0, 1, 1}), InvalidArgument);
  EXPECT_THROW(generate_gridset({1, 0, 1}), InvalidArgument);
  EXPECT_THROW(generate_gridset({1, 5, 4}), InvalidArgument);
  EXPECT_THROW(generate_gridset({1, 1, 1, 0.0, 1.0}), InvalidArgument);
  EXPECT_THROW(generate_gridset({1, 1, 1, 2.0, 1.0}), InvalidArgument);
  EXPECT_THROW(generate_gridset({1, 1, 1, 1e-5, 2e7, 1.5}), InvalidArgument);
}

TEST(SeededRng, Ranges) {
  SeededRng rng(0);
  for (int i = 0; i < 10000; ++i) {
    const auto v = rng.uniform_int(3, 9);
    ASSERT_GE(v, 3u);
    ASSERT_LE(v, 9u);
    const double u = rng.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
  EXPECT_EQ(rng.uniform_int(4, 4), 4u);
}

TEST(SeededRng, PinnedSequence) {
  // std::mt19937_64's 10000th output is fixed by the standard.
  std::mt19937_64 engine;
  engine.discard(9999);
  EXPECT_EQ(engine(), 9981545732273789042ULL);
}

TEST(ExampleGridset, Fixture) {
  const GridSet grids = paper_example_gridset();
  ASSERT_EQ(grids.k(), 3u);
  EXPECT_EQ(grids.grids[0].size(), 5u);
  EXPECT_EQ(grids.grids[1].size(), 6u);
  EXPECT_EQ(grids.grids[2].size(), 4u);
  EXPECT_EQ(grids.grids[2].values.front(), 0.5);
  EXPECT_EQ(grids.grids[1].values.back(), 6.5);
  EXPECT_EQ(paper_example_keys().size(), 7u);
}

TEST(AdversarialShapes, ContentsAndBound) {
  const auto shapes = adversarial_shapes();
  auto contains = [&](const std::vector<std::size_t>& s) {
    return std::find(shapes.begin(), shapes.end(), s) != shapes.end();
  };
  for (std::size_t k = 1; k <= 8; ++k) EXPECT_TRUE(contains(std::vector<std::size_t>(k, 1)));
  EXPECT_TRUE(contains({1, 1, 1, 1, 3}));

  for (const auto& shape : shapes) {
    const GridSet grids = gridset_with_sizes(shape);
    const CascadeGrid cascade = build_cascade(grids);
    EXPECT_LE(cascade.total_entries(), 2 * grids.total_points());
    EXPECT_TRUE(validate_structure(cascade, grids).empty());
    if (std::all_of(shape.begin(), shape.end(), [](std::size_t s) { return s == 1; }))
      EXPECT_EQ(cascade.total_entries(), shape.size());
    if (shape.size() == 1) EXPECT_EQ(cascade.total_entries(), shape[0]);
  }
}

TEST(FuzzSpec, WithinRanges) {
  for (std::size_t i = 0; i < 500; ++i) {
    const GenSpec s = fuzz_spec(7, i);
    EXPECT_GE(s.k, 1u);
    EXPECT_LE(s.k, 16u);
    EXPECT_GE(s.size_min, 1u);
    EXPECT_LE(s.size_min, s.size_max);
    EXPECT_LE(s.size_max, 1024u);
    EXPECT_EQ(s.duplicate_fraction, i % 2 ? 0.05 : 0.0);
  }
}

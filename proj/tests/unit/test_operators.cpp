#include <random>

#include <gtest/gtest.h>

#include "multislice/operators/dirichlet.hpp"
#include "multislice/operators/kmatrix.hpp"
#include "multislice/operators/laplacian.hpp"
#include "multislice/operators/projection.hpp"
#include "multislice/spectral/gap.hpp"
#include "oracles.hpp"

using namespace multislice;

namespace {

VertexFunction<mpq_class> from_values(const Composition& k, std::vector<long> v) {
  std::vector<mpq_class> q(v.begin(), v.end());
  return VertexFunction<mpq_class>(k, std::move(q));
}

}  // namespace

TEST(Laplacian, MatchesOracleEntrywise) {
  for (std::size_t n = 2; n <= 5; ++n)
    for (auto& k : reduced_compositions(n)) {
      auto lm = laplacian(k);
      Eigen::MatrixXd ref = oracle::laplacian(k.to_vector());
      Eigen::MatrixXd got = lm.to_dense(1000);
      EXPECT_EQ((got - ref).cwiseAbs().maxCoeff(), 0.0) << k.to_string();
    }
}

TEST(Laplacian, RowSumsVanish) {
  auto lm = laplacian(Composition{2, 1, 1});
  for (std::size_t v = 0; v < lm.dimension(); ++v) {
    long sum = 0;
    for (std::size_t w = 0; w < lm.dimension(); ++w) sum += lm.entry(v, w);
    EXPECT_EQ(sum, 0);
  }
}

TEST(Laplacian, SparseAndMatrixFreeAgree) {
  Composition k{2, 2, 1};
  const VertexSet vs(k);
  std::mt19937_64 rng(11);
  auto f = random_function(vs, rng);
  EXPECT_EQ(laplacian(k).apply(f), apply_laplacian(vs, f));
}

TEST(Laplacian, ConstantsAreInTheKernel) {
  const VertexSet vs(Composition{2, 1, 1});
  auto c = VertexFunction<mpq_class>::constant(vs, mpq_class(7, 3));
  EXPECT_TRUE(apply_laplacian(vs, c).is_zero());
}

TEST(Laplacian, LiftedKSpaceFunctionsHaveEigenvalueN) {
  for (auto& k : partitions(5)) {
    if (k.trivial()) continue;
    const VertexSet vs(k);
    for (auto& g : kspace_basis(k)) {
      for (std::size_t l = 0; l < k.total(); ++l) {
        auto f = lift_at(vs, g, l);
        auto lf = apply_laplacian(vs, f);
        EXPECT_EQ(lf, mpq_class(static_cast<unsigned long>(k.total())) * f) << k.to_string();
      }
    }
  }
}

TEST(Dirichlet, TwoPointSlice) {
  Composition k{1, 1};
  const VertexSet vs(k);
  auto f = from_values(k, {1, -1});
  EXPECT_EQ(norm_squared(f), 1);
  EXPECT_EQ(dirichlet_graph(vs, f), 2);
  EXPECT_EQ(dirichlet_scaled(vs, f), 4);
}

TEST(Dirichlet, GraphFormEqualsInnerProductWithL) {
  for (auto& k : partitions(5)) {
    const VertexSet vs(k);
    std::mt19937_64 rng(5);
    auto f = random_function(vs, rng);
    EXPECT_EQ(dirichlet_graph(vs, f), inner(f, apply_laplacian(vs, f)));
    EXPECT_EQ(dirichlet_scaled(vs, f),
              mpq_class(mpq_class(2) / static_cast<unsigned long>(k.total() - 1) *
                        dirichlet_graph(vs, f)));
  }
}

TEST(Dirichlet, ConstantsHaveZeroEnergy) {
  const VertexSet vs(Composition{2, 1, 1});
  auto c = VertexFunction<mpq_class>::constant(vs, mpq_class(3));
  EXPECT_EQ(dirichlet_graph(vs, c), 0);
  EXPECT_EQ(dirichlet_scaled(vs, c), 0);
  EXPECT_EQ(dirichlet_restricted(vs, c, 1, 0), 0);
}

TEST(Dirichlet, RestrictedFormIgnoresTheFixedCoordinate) {
  Composition k{2, 1, 1};
  const VertexSet vs(k);
  LevelFunction<mpq_class> g{{mpq_class(1), mpq_class(-5), mpq_class(2)}};
  auto f = lift_at(vs, g, 2);
  for (std::size_t m = 0; m < 3; ++m) EXPECT_EQ(dirichlet_restricted(vs, f, 2, m), 0);
}

TEST(Dirichlet, RestrictedFormPreconditions) {
  const VertexSet vs(Composition{1, 1});
  auto f = VertexFunction<mpq_class>::zeros(vs);
  EXPECT_THROW(dirichlet_restricted(vs, f, 0, 0), Error);
  const VertexSet vs3(Composition{2, 0, 1});
  auto f3 = VertexFunction<mpq_class>::zeros(vs3);
  EXPECT_THROW(dirichlet_restricted(vs3, f3, 0, 1), Error);
}

TEST(Dirichlet, IdentitiesHoldExactly) {
  std::mt19937_64 rng(2024);
  for (std::size_t n = 3; n <= 5; ++n)
    for (auto& k : partitions(n)) {
      const VertexSet vs(k);
      for (int s = 0; s < 3; ++s) {
        auto f = random_function(vs, rng);
        EXPECT_EQ(averaging_residual(vs, f), 0) << k.to_string();
        EXPECT_EQ(decomposition_residual(vs, f), 0) << k.to_string();
        for (std::size_t l = 0; l < n; ++l)
          for (std::size_t m = 0; m < k.levels(); ++m)
            EXPECT_EQ(shift_residual(vs, f, l, m), 0);
      }
    }
}

TEST(Dirichlet, FloatingMatchesExact) {
  Composition k{2, 2, 1};
  const VertexSet vs(k);
  std::mt19937_64 rng(9);
  auto f = random_function(vs, rng);
  EXPECT_NEAR(dirichlet_scaled(vs, to_double(f)), dirichlet_scaled(vs, f).get_d(), 1e-12);
  EXPECT_NEAR(decomposition_residual(vs, to_double(f)), 0.0, 1e-10);
}

TEST(Projection, InsertAndDelete) {
  Composition k{1, 1};
  EXPECT_EQ(insert_at(Vertex{1}, 0, 0, k), (Vertex{0, 1}));
  Vertex x{2, 0, 1, 0};
  for (std::size_t l = 0; l < 4; ++l) {
    auto [rest, m] = delete_at(x, l);
    EXPECT_EQ(insert_at(rest, l, m, Composition{2, 1, 1}), x);
  }
  EXPECT_THROW(insert_at(Vertex{0}, 0, 0, Composition{1, 0}), Error);
}

TEST(Projection, MeasureDecomposition) {
  EXPECT_TRUE(measure_decomposition_check(Composition{1, 1}));
  EXPECT_TRUE(measure_decomposition_check(Composition{2, 1, 1}));
  EXPECT_TRUE(measure_decomposition_check(Composition{3, 2}));
  EXPECT_TRUE(measure_decomposition_check(Composition{3, 0, 2}));
}

TEST(Projection, ProjectionFixesItsRange) {
  Composition k{2, 1, 1};
  const VertexSet vs(k);
  LevelFunction<mpq_class> g{{mpq_class(3), mpq_class(-1), mpq_class(1, 2)}};
  auto f = lift_at(vs, g, 1);
  EXPECT_EQ(project_onto_coordinate(vs, f, 1), f);
  auto c = VertexFunction<mpq_class>::constant(vs, mpq_class(4));
  EXPECT_EQ(project_onto_coordinate(vs, c, 0), c);
  std::mt19937_64 rng(1);
  auto h = random_function(vs, rng);
  auto once = project_onto_coordinate(vs, h, 2);
  EXPECT_EQ(project_onto_coordinate(vs, once, 2), once);
}

TEST(Projection, POnConstantsAndGapFunctions) {
  Composition k{2, 1, 1};
  const VertexSet vs(k);
  auto c = VertexFunction<mpq_class>::constant(vs, mpq_class(2));
  EXPECT_EQ(p_operator(vs, c), c);
  for (auto& g : kspace_basis(k))
    for (std::size_t l = 0; l < 4; ++l) {
      auto f = lift_at(vs, g, l);
      EXPECT_EQ(p_operator(vs, f), mpq_class(1, 3) * f);
    }
}

TEST(Projection, MatrixMatchesOracle) {
  for (auto& k : partitions(5)) {
    const VertexSet vs(k);
    Eigen::MatrixXd diff = p_matrix(vs, 1000) - oracle::p_matrix(k.to_vector());
    EXPECT_LT(diff.cwiseAbs().maxCoeff(), 1e-12) << k.to_string();
    auto exact = p_matrix_exact(vs, 1000);
    Eigen::MatrixXd dense = p_matrix(vs, 1000);
    for (std::size_t a = 0; a < vs.size(); ++a)
      for (std::size_t b = 0; b < vs.size(); ++b)
        EXPECT_NEAR(exact(a, b).get_d(), dense(a, b), 1e-14);
  }
}

TEST(KMatrix, EntriesAndForm) {
  auto kk = k_matrix(Composition{2, 1, 1});
  EXPECT_EQ(kk(0, 0), mpq_class(1, 3));
  EXPECT_EQ(kk(0, 1), mpq_class(1, 3));
  EXPECT_EQ(kk(1, 1), 0);
  EXPECT_EQ(kk(1, 0), mpq_class(2, 3));
  for (std::size_t n = 2; n <= 6; ++n)
    for (auto& k : reduced_compositions(n)) {
      const VertexSet vs(k);
      EXPECT_EQ(k_form(k), k_form_by_enumeration(vs)) << k.to_string();
    }
}

TEST(KMatrix, FormIsSymmetric) {
  EXPECT_TRUE(k_form(Composition{3, 1, 2}).is_symmetric());
  EXPECT_FALSE(k_matrix(Composition{3, 1, 2}).is_symmetric());
}

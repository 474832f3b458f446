#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "r2r/delay_chain.hpp"

using r2r::Matrix;

namespace {

Matrix printed(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

r2r::DelayDistribution poisson1(double p_nm) {
  r2r::DelayDistribution d = r2r::poisson_etas(1.0);
  d.p_nm = p_nm;
  return d;
}

}  // namespace

TEST(Poisson, MatchesPmf) {
  const auto d = r2r::poisson_etas(1.0);
  for (int k = 0; k < static_cast<int>(d.etas.size()); ++k) {
    EXPECT_NEAR(d.eta(k), oracle::poisson_pmf(1.0, k), 1e-15);
  }
  EXPECT_NEAR(d.eta(2), 0.1839, 5e-5);
  EXPECT_GE(d.stored_mass(), 1.0 - 1e-10);
  EXPECT_FALSE(d.tail_warning);
}

TEST(Poisson, ShortListWarnsAboutTail) {
  const auto d = r2r::poisson_etas(1.0, 3);
  EXPECT_TRUE(d.tail_warning);
  EXPECT_NO_THROW(d.validate());
}

TEST(Distribution, RejectsBadInput) {
  EXPECT_THROW(r2r::explicit_etas({0.5, 0.6}, 0.0), r2r::ContractViolation);
  EXPECT_THROW(r2r::explicit_etas({0.5, 0.4}, 0.0), r2r::ContractViolation);
  EXPECT_THROW(r2r::explicit_etas({1.0}, 1.0), r2r::ContractViolation);
  EXPECT_THROW(r2r::explicit_etas({-0.1, 1.1}, 0.0), r2r::ContractViolation);
  EXPECT_THROW(r2r::poisson_etas(0.0), r2r::ContractViolation);
}

TEST(Transition, PrintedMatrixNoSkips) {
  const Matrix expected = printed({{0.3679, 0.6321, 0, 0, 0},
                                   {0.3679, 0.3679, 0.2642, 0, 0},
                                   {0.3679, 0.3679, 0.1839, 0.0803, 0},
                                   {0.3679, 0.3679, 0.1839, 0.0613, 0.0190},
                                   {0.3679, 0.3679, 0.1839, 0.0613, 0.0153}});
  const Matrix p = r2r::raw_transition(poisson1(0.0), 4);
  EXPECT_LT((p - expected).cwiseAbs().maxCoeff(), 5.01e-5);
}

TEST(Transition, PrintedMatrixWithSkips) {
  const Matrix expected = printed({{0.2575, 0.7425, 0, 0, 0, 0},
                                   {0.2575, 0.2575, 0.4850, 0, 0, 0},
                                   {0.2575, 0.2575, 0.1288, 0.3562, 0, 0},
                                   {0.2575, 0.2575, 0.1288, 0.0429, 0.3133, 0},
                                   {0.2575, 0.2575, 0.1288, 0.0429, 0.0107, 0.3026},
                                   {0.2575, 0.2575, 0.1288, 0.0429, 0.0107, 0.0021}});
  const Matrix p = r2r::raw_transition(poisson1(0.3), 5);
  EXPECT_LT((p - expected).cwiseAbs().maxCoeff(), 5.01e-5);
}

TEST(Transition, RowStochasticAndBanded) {
  for (double p_nm : {0.0, 0.2, 0.5, 0.9}) {
    for (int tau_p : {1, 2, 5, 12}) {
      const auto chain = r2r::build_transition(poisson1(p_nm), tau_p);
      ASSERT_EQ(chain.P.rows(), tau_p + 1);
      for (int i = 0; i <= tau_p; ++i) {
        EXPECT_NEAR(chain.P.row(i).sum(), 1.0, 1e-12);
        for (int j = i + 2; j <= tau_p; ++j) EXPECT_EQ(chain.P(i, j), 0.0);
      }
    }
  }
}

TEST(Transition, NoSkipsNoDelayGivesSingleState) {
  const auto chain = r2r::build_transition(r2r::explicit_etas({1.0}, 0.0), 1);
  // every report arrives in the same run: the chain returns to 0 at once
  EXPECT_NEAR(chain.P(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(chain.e_tau, 0.0, 1e-15);
}

TEST(Transition, RejectsZeroTruncation) {
  EXPECT_THROW(r2r::build_transition(poisson1(0.0), 0), r2r::ContractViolation);
}

TEST(Stationary, SolvesBalanceEquations) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix p = oracle::random_banded_stochastic(6, rng);
    // keep it irreducible: every state can fall back to 0
    for (int i = 0; i < 6; ++i) {
      p(i, 0) += 0.05;
      p.row(i) /= p.row(i).sum();
    }
    const r2r::Vector pi = r2r::stationary(p);
    EXPECT_NEAR(pi.sum(), 1.0, 1e-12);
    EXPECT_LT((pi.transpose() * p - pi.transpose()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_GE(pi.minCoeff(), 0.0);
  }
}

TEST(Stationary, ReducibleChainThrows) {
  const Matrix p = Matrix::Identity(3, 3);
  EXPECT_THROW(r2r::stationary(p), std::runtime_error);
}

TEST(AverageDelay, TableOfTruncatedValues) {
  const std::vector<std::pair<double, std::pair<int, double>>> rows{
      {0.0, {4, 0.8128}}, {0.1, {4, 0.9369}}, {0.2, {4, 1.079}},
      {0.3, {5, 1.27}},   {0.4, {5, 1.477}},  {0.5, {8, 1.859}}};
  for (const auto& [p_nm, pair] : rows) {
    EXPECT_NEAR(r2r::build_transition(poisson1(p_nm), pair.first).e_tau, pair.second, 0.005) << p_nm;
  }
  EXPECT_NEAR(r2r::build_transition(poisson1(0.3), 5).e_tau, 1.2695, 5e-5);
}

TEST(Truncation, SmallestConvergedTauP) {
  const std::vector<std::pair<double, std::pair<int, double>>> rows{
      {0.0, {4, 0.8128}}, {0.1, {6, 0.9389}}, {0.2, {6, 1.093}},
      {0.3, {8, 1.288}},  {0.4, {13, 1.544}}, {0.5, {15, 1.895}}};
  for (const auto& [p_nm, pair] : rows) {
    const int tau = r2r::choose_truncation(poisson1(p_nm));
    EXPECT_EQ(tau, pair.first) << p_nm;
    EXPECT_NEAR(r2r::build_transition(poisson1(p_nm), tau).e_tau, pair.second, 5e-4) << p_nm;
  }
}

TEST(Truncation, MonotoneApproachAndHeavyTail) {
  const auto d = poisson1(0.3);
  double prev = 0.0;
  for (int tau = 1; tau < 20; ++tau) {
    const double e = r2r::build_transition(d, tau).e_tau;
    EXPECT_GE(e, prev - 1e-12);
    prev = e;
  }
  r2r::TruncationOptions opts;
  opts.max_tau = 20;
  EXPECT_THROW(r2r::choose_truncation(poisson1(0.95), opts), std::runtime_error);
  EXPECT_THROW(r2r::choose_truncation(poisson1(0.1), -1.0), r2r::ContractViolation);
}

TEST(Transition, LastRowRenormalizationWarning) {
  EXPECT_FALSE(r2r::build_transition(poisson1(0.0), 4).renorm_warning);
  EXPECT_TRUE(r2r::build_transition(poisson1(0.0), 1).renorm_warning);
}

TEST(FixedChains, SamplingAndFixedDelay) {
  for (int d = 1; d <= 4; ++d) {
    const auto s = r2r::sampling_chain(d);
    EXPECT_EQ(s.tau_p, d);
    EXPECT_NEAR(s.e_tau, d / 2.0, 1e-12);
    for (int i = 0; i <= d; ++i) EXPECT_NEAR(s.pi(i), 1.0 / (d + 1), 1e-12);
  }
  const auto f = r2r::fixed_delay_chain(3);
  EXPECT_NEAR(f.e_tau, 3.0, 1e-12);
  EXPECT_THROW(r2r::sampling_chain(0), r2r::ContractViolation);
}

TEST(FixedChains, FromMatrixRequiresStochastic) {
  Matrix p(2, 2);
  p << 0.5, 0.6, 1.0, 0.0;
  EXPECT_THROW(r2r::chain_from_matrix(p), r2r::ContractViolation);
  p << 0.5, 0.5, 1.0, 0.0;
  const auto c = r2r::chain_from_matrix(p);
  EXPECT_NEAR(c.pi(0), 2.0 / 3.0, 1e-12);
}

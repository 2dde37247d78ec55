#include "isokit/sdpsolve.hpp"

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "isokit/config.hpp"

#include "sdp_oracle_cases.inc"

namespace {

using isokit::sdpsolve::Constraint;
using isokit::sdpsolve::SdpProblem;
using isokit::sdpsolve::Sense;
using isokit::sdpsolve::SolveResult;
using isokit::sdpsolve::SolverConfig;
using isokit::sdpsolve::SolveStatus;

Eigen::MatrixXcd from_row_major(const std::vector<double>& flat, int n) {
  Eigen::MatrixXcd m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = flat[r * n + c];
  return m;
}

Eigen::MatrixXcd from_row_major_ri(const std::vector<double>& flat, int n) {
  Eigen::MatrixXcd m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      m(r, c) = {flat[2 * (r * n + c)], flat[2 * (r * n + c) + 1]};
  return m;
}

SdpProblem problem_from_case(const OracleCase& k) {
  SdpProblem p;
  p.block_sizes = k.sizes;
  for (std::size_t b = 0; b < k.sizes.size(); ++b)
    p.objective.push_back(from_row_major(k.objective[b], k.sizes[b]));
  for (const auto& oc : k.constraints) {
    Constraint c;
    c.rhs = oc.rhs;
    for (std::size_t b = 0; b < k.sizes.size(); ++b)
      c.blocks.emplace(static_cast<int>(b),
                       from_row_major(oc.blocks[b], k.sizes[b]));
    p.constraints.push_back(std::move(c));
  }
  return p;
}

SdpProblem complex_problem_from_case(const ComplexOracleCase& k) {
  SdpProblem p;
  p.block_sizes = {k.size};
  p.objective.push_back(from_row_major_ri(k.objective_ri, k.size));
  for (const auto& [flat, rhs] : k.constraints_ri) {
    Constraint c;
    c.rhs = rhs;
    c.blocks.emplace(0, from_row_major_ri(flat, k.size));
    p.constraints.push_back(std::move(c));
  }
  return p;
}

// max Tr(X) subject to X <= 1_k, modeled with an explicit slack block:
// X + S = 1, both PSD.
SdpProblem max_trace_capped(int k) {
  SdpProblem p;
  p.sense = Sense::maximize;
  p.block_sizes = {k, k};
  p.objective.resize(2);
  p.objective[0] = Eigen::MatrixXcd::Identity(k, k);
  p.objective[1] = Eigen::MatrixXcd::Zero(k, k);
  for (int a = 0; a < k; ++a) {
    for (int b = a; b < k; ++b) {
      Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(k, k);
      e(a, b) = 1.0;
      e(b, a) = 1.0;
      Constraint c;
      c.blocks.emplace(0, e);
      c.blocks.emplace(1, e);
      c.rhs = (a == b) ? 1.0 : 0.0;
      p.constraints.push_back(std::move(c));
    }
  }
  return p;
}

double min_eigenvalue(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m,
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

TEST(SdpSolve, MaxTraceCappedByIdentity) {
  for (int k = 1; k <= 4; ++k) {
    SolveResult r = isokit::sdpsolve::solve(max_trace_capped(k));
    EXPECT_EQ(r.status, SolveStatus::optimal) << "k=" << k;
    EXPECT_NEAR(r.primal_value, double(k), 1e-6) << "k=" << k;
    EXPECT_NEAR(r.dual_value, double(k), 1e-6) << "k=" << k;
  }
}

TEST(SdpSolve, ReferenceOptima) {
  for (const auto& k : sdp_oracle_cases()) {
    SdpProblem p = problem_from_case(k);
    SolveResult r = isokit::sdpsolve::solve(p);
    EXPECT_EQ(r.status, SolveStatus::optimal);
    EXPECT_NEAR(r.primal_value, k.min_value, 2e-6);
    // Result invariants: near-zero duality gap and PSD solution blocks.
    EXPECT_LE(std::abs(r.primal_value - r.dual_value),
              1e-5 * (1.0 + std::abs(r.primal_value)));
    for (const auto& x : r.block_solution)
      EXPECT_GE(min_eigenvalue(x), -1e-8);
  }
}

TEST(SdpSolve, ComplementaritySlackness) {
  const auto cases = sdp_oracle_cases();
  const auto& k = cases[2];  // two blocks
  SdpProblem p = problem_from_case(k);
  SolveResult r = isokit::sdpsolve::solve(p);
  ASSERT_EQ(r.status, SolveStatus::optimal);
  // Rebuild the dual slack Z = C - sum_i y_i A_i from the multipliers.
  double xz = 0.0;
  int dim = 0;
  for (std::size_t b = 0; b < p.block_sizes.size(); ++b) {
    Eigen::MatrixXcd z = p.objective[b];
    for (std::size_t i = 0; i < p.constraints.size(); ++i) {
      auto it = p.constraints[i].blocks.find(static_cast<int>(b));
      if (it != p.constraints[i].blocks.end())
        z -= r.dual_multipliers[i] * it->second;
    }
    EXPECT_GE(min_eigenvalue(z), -1e-6);
    xz += (z * r.block_solution[b]).trace().real();
    dim += p.block_sizes[b];
  }
  EXPECT_LE(std::abs(xz) / dim, 1e-7);
}

TEST(SdpSolve, ComplexHermitianViaEmbedding) {
  ComplexOracleCase k = sdp_complex_oracle_case();
  SdpProblem p = complex_problem_from_case(k);
  SolveResult r = isokit::sdpsolve::solve(p);
  EXPECT_EQ(r.status, SolveStatus::optimal);
  EXPECT_NEAR(r.primal_value, k.min_value, 2e-6);
  ASSERT_EQ(r.block_solution.size(), 1u);
  const Eigen::MatrixXcd& x = r.block_solution[0];
  EXPECT_EQ(x.rows(), k.size);
  EXPECT_LT((x - x.adjoint()).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_GE(min_eigenvalue(x), -1e-8);
  // The recovered Hermitian solution must satisfy the original constraints.
  for (const auto& con : p.constraints) {
    double lhs = (con.blocks.at(0) * x).trace().real();
    EXPECT_NEAR(lhs, con.rhs, 1e-6);
  }
}

TEST(SdpSolve, EmbeddingPreservesOptimalValue) {
  SolverConfig tight;
  tight.tol_gap = 1e-10;
  tight.tol_feas = 1e-10;
  // Real case: embedding doubles every block but must not move the value.
  SdpProblem p = problem_from_case(sdp_oracle_cases()[0]);
  SolveResult direct = isokit::sdpsolve::solve(p, tight);
  SolveResult embedded =
      isokit::sdpsolve::solve(isokit::sdpsolve::to_real_embedding(p), tight);
  ASSERT_EQ(direct.status, SolveStatus::optimal);
  ASSERT_EQ(embedded.status, SolveStatus::optimal);
  EXPECT_NEAR(direct.primal_value, embedded.primal_value, 1e-8);

  SdpProblem pc = complex_problem_from_case(sdp_complex_oracle_case());
  SdpProblem pce = isokit::sdpsolve::to_real_embedding(pc);
  for (const auto& c : pce.objective)
    EXPECT_LT(c.imag().cwiseAbs().maxCoeff(), 1e-15);
  SolveResult ec = isokit::sdpsolve::solve(pce, tight);
  ASSERT_EQ(ec.status, SolveStatus::optimal);
  EXPECT_NEAR(ec.primal_value, sdp_complex_oracle_case().min_value, 2e-6);
}

TEST(SdpSolve, ScaleInvariance) {
  SolverConfig tight;
  tight.tol_gap = 1e-11;
  tight.tol_feas = 1e-11;
  SdpProblem p = problem_from_case(sdp_oracle_cases()[0]);
  SdpProblem p10 = p;
  for (auto& c : p10.objective) c *= 10.0;
  for (auto& con : p10.constraints) {
    for (auto& [b, a] : con.blocks) a *= 10.0;
    con.rhs *= 10.0;
  }
  SolveResult r1 = isokit::sdpsolve::solve(p, tight);
  SolveResult r10 = isokit::sdpsolve::solve(p10, tight);
  ASSERT_EQ(r1.status, SolveStatus::optimal);
  ASSERT_EQ(r10.status, SolveStatus::optimal);
  EXPECT_LE(std::abs(r10.primal_value - 10.0 * r1.primal_value),
            1e-9 * std::abs(r10.primal_value));
}

TEST(SdpSolve, RedundantConstraintsPruned) {
  SdpProblem p = problem_from_case(sdp_oracle_cases()[0]);
  const double base = isokit::sdpsolve::solve(p).primal_value;
  // A consistent duplicate (scaled copy) must not change anything.
  Constraint dup;
  dup.rhs = 2.0 * p.constraints[0].rhs;
  for (const auto& [b, a] : p.constraints[0].blocks)
    dup.blocks.emplace(b, 2.0 * a);
  p.constraints.push_back(dup);
  SolveResult r = isokit::sdpsolve::solve(p);
  EXPECT_EQ(r.status, SolveStatus::optimal);
  EXPECT_NEAR(r.primal_value, base, 2e-6);
  EXPECT_NE(r.diagnostics.find("dependent"), std::string::npos);

  // The same duplicate with a broken right-hand side is structurally
  // infeasible and must be reported as such.
  p.constraints.back().rhs += 1.0;
  SolveResult bad = isokit::sdpsolve::solve(p);
  EXPECT_EQ(bad.status, SolveStatus::infeasible_detected);
}

TEST(SdpSolve, MaxIterReportsResiduals) {
  SolverConfig cfg;
  cfg.max_iter = 2;
  SolveResult r = isokit::sdpsolve::solve(max_trace_capped(3), cfg);
  EXPECT_EQ(r.status, SolveStatus::max_iter);
  EXPECT_NE(r.diagnostics.find("pres="), std::string::npos);
}

TEST(SdpSolve, ValidatesInput) {
  SdpProblem p;
  EXPECT_THROW(isokit::sdpsolve::validate(p), isokit::DomainError);
  p.block_sizes = {2};
  p.objective.resize(1);
  p.objective[0] = Eigen::MatrixXcd::Zero(2, 2);
  p.objective[0](0, 1) = 1.0;  // not Hermitian
  EXPECT_THROW(isokit::sdpsolve::validate(p), isokit::DomainError);
  p.objective[0](1, 0) = 1.0;
  EXPECT_NO_THROW(isokit::sdpsolve::validate(p));
  Constraint c;
  c.blocks.emplace(5, Eigen::MatrixXcd::Identity(2, 2));
  c.rhs = 1.0;
  p.constraints.push_back(c);
  EXPECT_THROW(isokit::sdpsolve::validate(p), isokit::DomainError);
}

TEST(SdpSolve, StatusStrings) {
  EXPECT_STREQ(isokit::sdpsolve::to_string(SolveStatus::optimal), "optimal");
  EXPECT_STREQ(isokit::sdpsolve::to_string(SolveStatus::max_iter), "max-iter");
  EXPECT_STREQ(isokit::sdpsolve::to_string(SolveStatus::infeasible_detected),
               "infeasible-detected");
  EXPECT_STREQ(isokit::sdpsolve::to_string(SolveStatus::numerical_failure),
               "numerical-failure");
}

TEST(SdpaExport, GoldenToyProblem) {
  // One dense 2x2 block, one constraint Tr[X] = 1, objective
  // C = [[2, 0.5], [0.5, 2]] minimized, so the exported objective (in
  // maximize sense) is -C.
  SdpProblem p;
  p.block_sizes = {2};
  Eigen::MatrixXcd c(2, 2);
  c << 2.0, 0.5, 0.5, 2.0;
  p.objective.push_back(c);
  Constraint con;
  con.blocks.emplace(0, Eigen::MatrixXcd::Identity(2, 2));
  con.rhs = 1.0;
  p.constraints.push_back(con);
  const std::string expected =
      "1\n"
      "1\n"
      "2\n"
      "1\n"
      "0 1 1 1 -2\n"
      "0 1 1 2 -0.5\n"
      "0 1 2 2 -2\n"
      "1 1 1 1 1\n"
      "1 1 2 2 1\n";
  EXPECT_EQ(isokit::sdpsolve::export_sdpa(p), expected);
}

TEST(SdpaExport, DiagonalBlocksAndEmptyProblem) {
  SdpProblem p;
  p.block_sizes = {2, 2};
  Eigen::MatrixXcd dense(2, 2);
  dense << 1.0, 0.25, 0.25, 3.0;
  Eigen::MatrixXcd diag = Eigen::Vector2cd(0.5, -1.5).asDiagonal();
  p.objective = {dense, diag};
  Constraint con;
  con.blocks.emplace(0, Eigen::MatrixXcd::Identity(2, 2));
  con.blocks.emplace(1, Eigen::MatrixXcd::Identity(2, 2));
  con.rhs = 2.0;
  p.constraints.push_back(con);
  p.sense = Sense::maximize;  // objective exported as-is
  const std::string expected =
      "1\n"
      "2\n"
      "2 -2\n"
      "2\n"
      "0 1 1 1 1\n"
      "0 1 1 2 0.25\n"
      "0 1 2 2 3\n"
      "0 2 1 1 0.5\n"
      "0 2 2 2 -1.5\n"
      "1 1 1 1 1\n"
      "1 1 2 2 1\n"
      "1 2 1 1 1\n"
      "1 2 2 2 1\n";
  EXPECT_EQ(isokit::sdpsolve::export_sdpa(p), expected);

  SdpProblem empty;
  empty.block_sizes = {1};
  EXPECT_EQ(isokit::sdpsolve::export_sdpa(empty), "0\n1\n-1\n\n");
}

TEST(SdpaExport, RejectsComplexData) {
  SdpProblem p;
  p.block_sizes = {2};
  Eigen::MatrixXcd c(2, 2);
  c << 1.0, std::complex<double>(0, 1), std::complex<double>(0, -1), 1.0;
  p.objective.push_back(c);
  EXPECT_THROW(isokit::sdpsolve::export_sdpa(p), isokit::DomainError);
  EXPECT_NO_THROW(
      isokit::sdpsolve::export_sdpa(isokit::sdpsolve::to_real_embedding(p)));
}

}  // namespace

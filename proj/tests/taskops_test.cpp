#include "isokit/taskops.hpp"

#include <gtest/gtest.h>

#include <random>

#include "isokit/symrep.hpp"
#include "isokit/tensoralg.hpp"
#include "isokit/young.hpp"

using namespace isokit;
using tensoralg::LabeledOperator;
using tensoralg::SystemLabel;
using young::Diagram;

namespace {

double min_eigenvalue(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  return es.eigenvalues().minCoeff();
}

double herm_residual(const Eigen::MatrixXcd& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace

TEST(Taskops, OmegaBlockValues) {
  // 1x1 blocks at d=2, D=3, n=1.
  const Eigen::MatrixXd sym = taskops::omega_block({2}, 2, 3);
  ASSERT_EQ(sym.rows(), 1);
  EXPECT_NEAR(sym(0, 0), 1.0 / 24.0, 1e-14);
  const Eigen::MatrixXd anti = taskops::omega_block({1, 1}, 2, 3);
  EXPECT_NEAR(anti(0, 0), 1.0 / 12.0, 1e-14);
  // Trace rule for a 2-dimensional shape.
  const Eigen::MatrixXd mix = taskops::omega_block({2, 1}, 2, 3);
  const double expect = static_cast<double>(young::dim_sym({2, 1})) /
                        (4.0 * young::dim_unitary({2, 1}, 3));
  EXPECT_NEAR(mix.trace(), expect, 1e-14);
  EXPECT_THROW(taskops::omega_block({1, 1, 1}, 2, 3), DomainError);
}

TEST(Taskops, XiSigmaBlockValues) {
  const Eigen::MatrixXd xi = taskops::xi_block({1}, {2}, 2, 3);
  ASSERT_EQ(xi.rows(), 1);
  EXPECT_NEAR(xi(0, 0), 1.0 / 8.0, 1e-14);
  const Eigen::MatrixXd sg = taskops::sigma_block({1}, {1, 1}, 2, 3);
  EXPECT_NEAR(sg(0, 0), 1.0 / 6.0, 1e-14);
  EXPECT_THROW(taskops::xi_block({1}, {1, 1, 1}, 2, 3), DomainError);
  EXPECT_THROW(taskops::sigma_block({1}, {2}, 2, 2), DomainError);
}

TEST(Taskops, SigmaBlockTwoFormsAgree) {
  // Hook-ratio form against the multiplicity-difference form.
  for (int d = 2; d <= 3; ++d)
    for (int D = d + 1; D <= d + 2; ++D)
      for (int n = 0; n <= 3; ++n)
        for (const auto& lam : young::enumerate_diagrams(n, d))
          for (const auto& nu : young::add_box(lam, D)) {
            const double hook_form =
                static_cast<double>(young::hook_product(lam)) /
                static_cast<double>(young::hook_product(nu)) /
                static_cast<double>(young::dim_unitary(nu, D));
            double two_term = 1.0 / young::dim_unitary(lam, D);
            if (static_cast<int>(nu.size()) <= d)
              two_term -= static_cast<double>(young::dim_unitary(nu, d)) /
                          (static_cast<double>(young::dim_unitary(lam, d)) *
                           young::dim_unitary(nu, D));
            two_term /= (D - d);
            EXPECT_NEAR(hook_form, two_term, 1e-14);
          }
}

TEST(Taskops, BlocksHermitianAndSigmaPsd) {
  for (int n = 1; n <= 3; ++n) {
    const taskops::TaskOperators ops = taskops::build_task_operators(2, 3, n);
    for (const auto& [mu, b] : ops.omega)
      EXPECT_LT((b - b.transpose()).cwiseAbs().maxCoeff(), 1e-12);
    for (const auto& [key, b] : ops.xi)
      EXPECT_LT((b - b.transpose()).cwiseAbs().maxCoeff(), 1e-12);
    for (const auto& [key, b] : ops.sigma) {
      EXPECT_LT((b - b.transpose()).cwiseAbs().maxCoeff(), 1e-12);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b);
      EXPECT_GT(es.eigenvalues().minCoeff(), -1e-12);
    }
  }
}

TEST(Taskops, FullOperatorTraces) {
  for (int n = 1; n <= 2; ++n) {
    const LabeledOperator om = taskops::full_omega(2, 3, n);
    EXPECT_NEAR(std::real(trace(om)), std::pow(2.0, n - 1), 1e-10);
    EXPECT_LT(herm_residual(om.matrix()), 1e-12);
    const LabeledOperator xi = taskops::full_xi(2, 3, n);
    EXPECT_NEAR(std::real(trace(xi)), std::pow(2.0, n), 1e-10);
    const LabeledOperator sg = taskops::full_sigma(2, 3, n);
    EXPECT_NEAR(std::real(trace(sg)), std::pow(2.0, n), 1e-10);
    EXPECT_GT(min_eigenvalue(sg.matrix()), -1e-10);
    EXPECT_GT(min_eigenvalue(xi.matrix()), -1e-10);
  }
}

TEST(Taskops, BlockFullAgreementOmega) {
  // Assembling the omega blocks through the matrix units reproduces the
  // pair-ordered twirl construction.
  for (int n = 1; n <= 2; ++n) {
    const int d = 2, D = 3;
    std::map<taskops::DiagramPair, Eigen::MatrixXd> blocks;
    for (const auto& mu : young::enumerate_diagrams(n + 1, d))
      blocks[{mu, mu}] = taskops::omega_block(mu, d, D);
    std::vector<std::string> dside, Dside;
    for (int i = 1; i <= n; ++i) dside.push_back(taskops::in_label(i));
    dside.push_back(taskops::kFuture);
    Dside.push_back(taskops::kPast);
    for (int i = 1; i <= n; ++i) Dside.push_back(taskops::out_label(i));
    const LabeledOperator assembled =
        taskops::assemble_blocks(d, D, dside, Dside, blocks);
    const LabeledOperator direct = taskops::full_omega(d, D, n);
    EXPECT_LT(tensoralg::max_abs_diff(direct, assembled), 1e-10) << "n=" << n;
  }
}

TEST(Taskops, BlockFullAgreementXi) {
  for (int n = 1; n <= 2; ++n) {
    const int d = 2, D = 3;
    std::map<taskops::DiagramPair, Eigen::MatrixXd> blocks;
    for (const auto& lam : young::enumerate_diagrams(n, d))
      for (const auto& nu : young::add_box(lam, d))
        blocks[{lam, nu}] = taskops::xi_block(lam, nu, d, D);
    std::vector<std::string> dside, Dside;
    for (int i = 1; i <= n; ++i) dside.push_back(taskops::in_label(i));
    Dside.push_back(taskops::kPast);
    for (int i = 1; i <= n; ++i) Dside.push_back(taskops::out_label(i));
    const LabeledOperator assembled =
        taskops::assemble_blocks(d, D, dside, Dside, blocks);
    const LabeledOperator direct = taskops::full_xi(d, D, n);
    EXPECT_LT(tensoralg::max_abs_diff(direct, assembled), 1e-10) << "n=" << n;
  }
}

TEST(Taskops, BlockFullAgreementSigma) {
  for (int n = 1; n <= 2; ++n) {
    const int d = 2, D = 3;
    std::map<taskops::DiagramPair, Eigen::MatrixXd> blocks;
    for (const auto& lam : young::enumerate_diagrams(n, d))
      for (const auto& nu : young::add_box(lam, D))
        blocks[{lam, nu}] = taskops::sigma_block(lam, nu, d, D);
    std::vector<std::string> dside, Dside;
    for (int i = 1; i <= n; ++i) dside.push_back(taskops::in_label(i));
    Dside.push_back(taskops::kPast);
    for (int i = 1; i <= n; ++i) Dside.push_back(taskops::out_label(i));
    const LabeledOperator assembled =
        taskops::assemble_blocks(d, D, dside, Dside, blocks);
    const LabeledOperator direct = taskops::full_sigma(d, D, n);
    EXPECT_LT(tensoralg::max_abs_diff(direct, assembled), 1e-10) << "n=" << n;
  }
}

TEST(Taskops, MonteCarloOmegaOracle) {
  // Haar-sampled average of (1/d^2)|V>><<V|^{(x)n} (x) |V>><<V| against the
  // exact construction, d=2, D=3, n=2.
  const int d = 2, D = 3, n = 2;
  const int samples = 10000;
  std::mt19937_64 rng(20260821);
  const LabeledOperator exact = taskops::full_omega(d, D, n);
  Eigen::MatrixXcd acc =
      Eigen::MatrixXcd::Zero(exact.total_dim(), exact.total_dim());
  std::vector<std::string> order;
  for (const auto& s : exact.systems()) order.push_back(s.name);
  for (int s = 0; s < samples; ++s) {
    const Eigen::MatrixXcd V = tensoralg::haar_isometry(D, d, rng);
    LabeledOperator term = tensoralg::isometry_choi(
        V, {taskops::in_label(1), d}, {taskops::out_label(1), D});
    for (int i = 2; i <= n; ++i)
      term = tensor(term, tensoralg::isometry_choi(
                              V, {taskops::in_label(i), d},
                              {taskops::out_label(i), D}));
    term = tensor(term, tensoralg::isometry_choi(V, {taskops::kFuture, d},
                                                 {taskops::kPast, D}));
    acc += reorder(term, order).matrix();
  }
  acc /= static_cast<double>(samples) * d * d;
  // Entrywise agreement within 3 standard errors (absolute scale ~ 1/sqrt(N)
  // for entries of size ~1/d^2); use a conservative uniform band.
  const double band = 3.0 / std::sqrt(static_cast<double>(samples));
  EXPECT_LT((acc - exact.matrix()).cwiseAbs().maxCoeff(), band);
}

TEST(Taskops, CombSigmaBasics) {
  for (int d = 2; d <= 3; ++d) {
    const LabeledOperator sg = taskops::comb_sigma(d, 2);
    EXPECT_LT(herm_residual(sg.matrix()), 1e-12);
    EXPECT_GT(min_eigenvalue(sg.matrix()), -1e-10);
    // Trace against the closed-form sum.
    double expect = 0;
    for (const auto& lam : young::enumerate_diagrams(2, d)) {
      double inner = 0;
      for (const auto& mu : young::add_box(lam, d))
        inner += static_cast<double>(young::hook_product(lam)) /
                 static_cast<double>(young::hook_product(mu));
      expect += static_cast<double>(young::dim_sym(lam)) *
                static_cast<double>(young::dim_unitary(lam, d)) * inner;
    }
    EXPECT_NEAR(std::real(trace(sg)), expect, 1e-10);
  }
  // d=1: single-row shapes only; the hook ratio collapses to 1/(n+1).
  const LabeledOperator tiny = taskops::comb_sigma(1, 2);
  EXPECT_NEAR(std::real(trace(tiny)), 1.0 / 3.0, 1e-12);
}

TEST(Taskops, TIChoiBasics) {
  const LabeledOperator ti = taskops::t_i_choi(2, 3, 1);
  EXPECT_NEAR(std::real(trace(ti)), 9.0, 1e-10);
  EXPECT_LT(herm_residual(ti.matrix()), 1e-12);
  EXPECT_GT(min_eigenvalue(ti.matrix()), -1e-10);
  // n=0: only the single-box shape survives.
  const LabeledOperator ti0 = taskops::t_i_choi(2, 3, 0);
  EXPECT_NEAR(std::real(trace(ti0)), 3.0, 1e-12);  // d_mu m_mu^{(D)} = 1*3
}

TEST(Taskops, CompositionIdentity) {
  // Linking the comb's success Choi with n uses of |V>><<V| yields the
  // exact U(d)-twirl term plus the image-mismatch branch, for every V.
  const int d = 2, D = 3, n = 2;
  const LabeledOperator ti = taskops::t_i_choi(d, D, n);

  // Exact twirl M on pairs (Ptilde,P'), (I_i,O'_i), then P~ embedded by V*.
  const long long dim = 8 * 8;  // d^{n+1} on each side
  Eigen::MatrixXd macc = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& mu : young::enumerate_diagrams(n + 1, d)) {
    const auto units = tensoralg::all_matrix_units(mu, d);
    const double w = 1.0 / static_cast<double>(young::dim_unitary(mu, d));
    const long long dm = young::dim_sym(mu);
    for (long long i = 0; i < dm; ++i)
      for (long long j = 0; j < dm; ++j) {
        const auto& a = units[static_cast<size_t>(i * dm + j)];
        const auto& b = units[static_cast<size_t>(i * dm + j)];
        for (long long r = 0; r < 8; ++r)
          for (long long c = 0; c < 8; ++c)
            macc.block(r * 8, c * 8, 8, 8) += w * a(r, c) * b;
      }
  }
  std::vector<SystemLabel> msys;
  msys.push_back({"Ptilde", d});
  for (int i = 1; i <= n; ++i) msys.push_back({taskops::in_label(i), d});
  msys.push_back({taskops::kPastPrime, d});
  for (int i = 1; i <= n; ++i) msys.push_back({taskops::out_prime_label(i), d});
  const LabeledOperator M(msys, macc.cast<tensoralg::Complex>());

  const LabeledOperator sg = taskops::comb_sigma(d, n);

  std::mt19937_64 rng(424242);
  double worst = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::MatrixXcd V = tensoralg::haar_isometry(D, d, rng);

    LabeledOperator uses = tensoralg::isometry_choi(
        V, {taskops::in_label(1), d}, {taskops::out_label(1), D});
    for (int i = 2; i <= n; ++i)
      uses = tensor(uses, tensoralg::isometry_choi(
                              V, {taskops::in_label(i), d},
                              {taskops::out_label(i), D}));
    const LabeledOperator lhs = link(ti, uses);

    // First term: M with Ptilde pushed through conj(V) and renamed P.
    LabeledOperator term1 =
        tensoralg::conjugate_system(M, "Ptilde", V.conjugate());
    std::vector<SystemLabel> t1sys = term1.systems();
    for (auto& s : t1sys)
      if (s.name == "Ptilde") s.name = taskops::kPast;
    term1 = LabeledOperator(t1sys, term1.matrix());

    // Second term: (1_D - V V^dag)^T on P tensored with the comb branch.
    const Eigen::MatrixXcd miss =
        (Eigen::MatrixXcd::Identity(D, D) - V * V.adjoint()).transpose();
    const LabeledOperator term2 =
        tensor(LabeledOperator({{taskops::kPast, D}}, miss), sg);

    const LabeledOperator rhs = tensoralg::add(term1, term2);
    worst = std::max(worst, tensoralg::max_abs_diff(lhs, rhs));
  }
  EXPECT_LT(worst, 1e-9);
}

TEST(Taskops, SigmaFromCompositionRemainder) {
  // 1/(D-d) T_I * |V>><<V|^{(x)n} * (1_D - Pi)_P reproduces comb_sigma,
  // independently of V.
  const int d = 2, D = 3, n = 1;
  const LabeledOperator ti = taskops::t_i_choi(d, D, n);
  std::mt19937_64 rng(777);
  const LabeledOperator expect = taskops::comb_sigma(d, n);
  for (int trial = 0; trial < 3; ++trial) {
    const Eigen::MatrixXcd V = tensoralg::haar_isometry(D, d, rng);
    const LabeledOperator uses = tensoralg::isometry_choi(
        V, {taskops::in_label(1), d}, {taskops::out_label(1), D});
    const LabeledOperator partial = link(ti, uses);
    const Eigen::MatrixXcd miss =
        Eigen::MatrixXcd::Identity(D, D) - V * V.adjoint();
    const LabeledOperator got =
        link(partial, LabeledOperator({{taskops::kPast, D}}, miss));
    LabeledOperator scaled(got.systems(), got.matrix() / (D - d));
    EXPECT_LT(tensoralg::max_abs_diff(expect, scaled), 1e-10);
  }
}

TEST(Taskops, AdjointTarget) {
  std::mt19937_64 rng(31337);
  const int d = 2, D = 3;
  const Eigen::MatrixXcd V = tensoralg::haar_isometry(D, d, rng);
  const LabeledOperator J = taskops::adjoint_target(V, "P", "F", "flag");

  // Trace preservation: Tr_{F,flag} J = 1_P.
  const LabeledOperator marg = partial_trace(J, {"F", "flag"});
  EXPECT_LT((marg.matrix() - Eigen::MatrixXcd::Identity(D, D))
                .cwiseAbs()
                .maxCoeff(),
            1e-12);

  // Applying the channel to a state in the image gives V^dag rho V (x) |0><0|.
  Eigen::MatrixXcd rho_small(d, d);
  rho_small << 0.7, tensoralg::Complex(0.1, 0.2),
      tensoralg::Complex(0.1, -0.2), 0.3;
  const Eigen::MatrixXcd rho = V * rho_small * V.adjoint();
  const LabeledOperator out =
      link(J, LabeledOperator({{"P", D}}, rho));
  const LabeledOperator flag0 = reorder(out, {"flag", "F"});
  // Success branch equals rho_small, failure branch zero.
  EXPECT_LT((flag0.matrix().block(0, 0, d, d) - rho_small).cwiseAbs().maxCoeff(),
            1e-12);
  EXPECT_LT(flag0.matrix().block(d, d, d, d).cwiseAbs().maxCoeff(), 1e-12);

  // Unitary case: the failure branch vanishes identically.
  const Eigen::MatrixXcd U = tensoralg::haar_unitary(d, rng);
  const LabeledOperator Ju = taskops::adjoint_target(U, "P", "F", "flag");
  const LabeledOperator fail =
      link(Ju, LabeledOperator::identity({{"P", d}}));
  const LabeledOperator ff = reorder(fail, {"flag", "F"});
  EXPECT_LT(ff.matrix().block(d, d, d, d).cwiseAbs().maxCoeff(), 1e-12);
}

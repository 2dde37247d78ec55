#include "isokit/taskops.hpp"

#include <cassert>
#include <cmath>
#include <string>
#include <vector>

#include "isokit/config.hpp"
#include "isokit/symrep.hpp"

namespace isokit::taskops {

namespace {

using Eigen::MatrixXd;
using tensoralg::LabeledOperator;
using tensoralg::SystemLabel;
using young::Diagram;

void accumulate_kron(MatrixXd& out, const MatrixXd& A, const MatrixXd& B,
                     double c) {
  const long long br = B.rows(), bc = B.cols();
  for (long long i = 0; i < A.rows(); ++i)
    for (long long j = 0; j < A.cols(); ++j) {
      const double a = c * A(i, j);
      if (a != 0.0) out.block(i * br, j * bc, br, bc) += a * B;
    }
}

long long ipow(long long b, int e) {
  long long r = 1;
  for (int k = 0; k < e; ++k) r *= b;
  return r;
}

std::vector<SystemLabel> labels_with_dim(const std::vector<std::string>& names,
                                         int dim) {
  std::vector<SystemLabel> out;
  out.reserve(names.size());
  for (const auto& nm : names) out.push_back({nm, dim});
  return out;
}

// u u^T with u_{(a,k)} = [pi_nu(cycle)]_{k, ext(a)}: the orthogonal-form
// matrix of (1 2 ... n+1) evaluated at the column of the tableau obtained by
// adding the last symbol to a tableau of the d-side shape.
MatrixXd dressed_outer(const Diagram& lam, const Diagram& nu) {
  const Eigen::MatrixXd cyc = symrep::cycle_rep(nu);
  const long long dl = young::dim_sym(lam);
  const long long dn = young::dim_sym(nu);
  Eigen::VectorXd u(dl * dn);
  for (long long a = 0; a < dl; ++a) {
    const int ext = young::extend_index(lam, static_cast<int>(a), nu);
    for (long long k = 0; k < dn; ++k) u(a * dn + k) = cyc(k, ext);
  }
  return u * u.transpose();
}

// Same dressing when the d-side shape equals nu itself (one extra symbol on
// both sides): u_{(i,k)} = [pi_nu(cycle)]_{k,i}.
MatrixXd dressed_outer_square(const Diagram& nu) {
  const Eigen::MatrixXd cyc = symrep::cycle_rep(nu);
  const long long dn = young::dim_sym(nu);
  Eigen::VectorXd u(dn * dn);
  for (long long i = 0; i < dn; ++i)
    for (long long k = 0; k < dn; ++k) u(i * dn + k) = cyc(k, i);
  return u * u.transpose();
}

bool contains(const std::vector<Diagram>& list, const Diagram& x) {
  for (const auto& y : list)
    if (y == x) return true;
  return false;
}

}  // namespace

std::string in_label(int i) { return "I" + std::to_string(i); }
std::string out_label(int i) { return "O" + std::to_string(i); }
std::string out_prime_label(int i) { return "O'" + std::to_string(i); }

Eigen::MatrixXd omega_block(const Diagram& mu, int d, int D) {
  young::validate(mu);
  if (static_cast<int>(mu.size()) > d)
    throw DomainError("omega_block: shape deeper than d");
  const long long mD = young::dim_unitary(mu, D);
  if (mD == 0) throw DomainError("omega_block: zero multiplicity at D");
  return dressed_outer_square(mu) /
         (static_cast<double>(d) * d * static_cast<double>(mD));
}

Eigen::MatrixXd xi_block(const Diagram& lam, const Diagram& nu, int d, int D) {
  young::validate(lam);
  young::validate(nu);
  if (!contains(young::add_box(lam, d), nu))
    throw DomainError("xi_block: nu must be lam plus one box of depth <= d");
  const double coeff =
      static_cast<double>(young::dim_unitary(nu, d)) /
      (static_cast<double>(d) * static_cast<double>(young::dim_unitary(lam, d)) *
       static_cast<double>(young::dim_unitary(nu, D)));
  return coeff * dressed_outer(lam, nu);
}

Eigen::MatrixXd sigma_block(const Diagram& lam, const Diagram& nu, int d,
                            int D) {
  young::validate(lam);
  young::validate(nu);
  if (D <= d) throw DomainError("sigma_block: requires D > d");
  if (!contains(young::add_box(lam, D), nu))
    throw DomainError("sigma_block: nu must be lam plus one box of depth <= D");
  const double coeff =
      static_cast<double>(young::hook_product(lam)) /
      static_cast<double>(young::hook_product(nu)) /
      static_cast<double>(young::dim_unitary(nu, D));
#ifndef NDEBUG
  {
    // The hook-ratio form must agree with the multiplicity-difference form.
    double two_term = 1.0 / static_cast<double>(young::dim_unitary(lam, D));
    if (static_cast<int>(nu.size()) <= d)
      two_term -= static_cast<double>(young::dim_unitary(nu, d)) /
                  (static_cast<double>(young::dim_unitary(lam, d)) *
                   static_cast<double>(young::dim_unitary(nu, D)));
    two_term /= static_cast<double>(D - d);
    assert(std::abs(coeff - two_term) < 1e-12 * (std::abs(coeff) + 1e-300));
  }
#endif
  return coeff * dressed_outer(lam, nu);
}

TaskOperators build_task_operators(int d, int D, int n) {
  if (d < 1 || D < d || n < 0)
    throw DomainError("build_task_operators: need D >= d >= 1, n >= 0");
  TaskOperators ops;
  ops.d = d;
  ops.D = D;
  ops.n = n;
  for (const auto& mu : young::enumerate_diagrams(n + 1, d))
    ops.omega[mu] = omega_block(mu, d, D);
  for (const auto& lam : young::enumerate_diagrams(n, d)) {
    for (const auto& nu : young::add_box(lam, d))
      ops.xi[{lam, nu}] = xi_block(lam, nu, d, D);
    if (D > d)
      for (const auto& nu : young::add_box(lam, D))
        ops.sigma[{lam, nu}] = sigma_block(lam, nu, d, D);
  }
  return ops;
}

LabeledOperator assemble_blocks(
    int d, int D, const std::vector<std::string>& d_side_labels,
    const std::vector<std::string>& D_side_labels,
    const std::map<DiagramPair, Eigen::MatrixXd>& blocks) {
  const long long dim_d = ipow(d, static_cast<int>(d_side_labels.size()));
  const long long dim_D = ipow(D, static_cast<int>(D_side_labels.size()));
  const long long total = dim_d * dim_D;
  check_allocation(16ull * static_cast<unsigned long long>(total) *
                       static_cast<unsigned long long>(total),
                   "assemble_blocks");
  MatrixXd acc = MatrixXd::Zero(total, total);
  for (const auto& [key, block] : blocks) {
    const auto& [lam, nu] = key;
    const long long dl = young::dim_sym(lam);
    const long long dn = young::dim_sym(nu);
    if (block.rows() != dl * dn || block.cols() != dl * dn)
      throw DomainError("assemble_blocks: block size mismatch");
    const auto units_d = tensoralg::all_matrix_units(lam, d);
    const auto units_D = tensoralg::all_matrix_units(nu, D);
    for (long long a = 0; a < dl; ++a)
      for (long long b = 0; b < dl; ++b)
        for (long long k = 0; k < dn; ++k)
          for (long long l = 0; l < dn; ++l) {
            const double x = block(a * dn + k, b * dn + l);
            if (x != 0.0)
              accumulate_kron(acc, units_d[static_cast<size_t>(a * dl + b)],
                              units_D[static_cast<size_t>(k * dn + l)], x);
          }
  }
  std::vector<SystemLabel> sys = labels_with_dim(d_side_labels, d);
  const auto dsys = labels_with_dim(D_side_labels, D);
  sys.insert(sys.end(), dsys.begin(), dsys.end());
  return LabeledOperator(sys, acc.cast<tensoralg::Complex>());
}

namespace {

// Pair-ordered twirl sum over mu of E^{mu,d} (x) E^{mu,D} / m_mu^{(D)} on
// m isometry uses: d-side slots (I_1..I_m), D-side slots (O_1..O_m).
LabeledOperator pair_twirl(int d, int D, int m) {
  const long long dim = ipow(d, m) * ipow(D, m);
  check_allocation(16ull * static_cast<unsigned long long>(dim) *
                       static_cast<unsigned long long>(dim),
                   "pair_twirl");
  MatrixXd acc = MatrixXd::Zero(dim, dim);
  for (const auto& mu : young::enumerate_diagrams(m, d)) {
    const auto units_d = tensoralg::all_matrix_units(mu, d);
    const auto units_D = tensoralg::all_matrix_units(mu, D);
    const double w = 1.0 / static_cast<double>(young::dim_unitary(mu, D));
    const long long dm = young::dim_sym(mu);
    for (long long i = 0; i < dm; ++i)
      for (long long j = 0; j < dm; ++j)
        accumulate_kron(acc, units_d[static_cast<size_t>(i * dm + j)],
                        units_D[static_cast<size_t>(i * dm + j)], w);
  }
  std::vector<SystemLabel> sys;
  for (int i = 1; i <= m; ++i) sys.push_back({in_label(i), d});
  for (int i = 1; i <= m; ++i) sys.push_back({out_label(i), D});
  return LabeledOperator(sys, acc.cast<tensoralg::Complex>());
}

}  // namespace

LabeledOperator full_omega(int d, int D, int n) {
  // The (n+1)-use twirl with the last pair relabeled (F,P), divided by d^2.
  LabeledOperator tw = pair_twirl(d, D, n + 1);
  std::vector<SystemLabel> sys;
  for (int i = 1; i <= n; ++i) sys.push_back({in_label(i), d});
  sys.push_back({kFuture, d});
  for (int i = 1; i <= n; ++i) sys.push_back({out_label(i), D});
  sys.push_back({kPast, D});
  LabeledOperator renamed(sys, tw.matrix() / (static_cast<double>(d) * d));
  std::vector<std::string> order;
  for (int i = 1; i <= n; ++i) order.push_back(in_label(i));
  order.push_back(kFuture);
  order.push_back(kPast);
  for (int i = 1; i <= n; ++i) order.push_back(out_label(i));
  return reorder(renamed, order);
}

LabeledOperator full_xi(int d, int D, int n) {
  LabeledOperator om = full_omega(d, D, n);
  LabeledOperator tr = partial_trace(om, {kFuture});
  return LabeledOperator(tr.systems(),
                         tr.matrix() * static_cast<double>(d));
}

LabeledOperator full_sigma(int d, int D, int n) {
  if (D <= d) throw DomainError("full_sigma: requires D > d");
  // 1/(D-d) [ (n-use twirl) (x) 1_P - d * full_xi ].
  LabeledOperator tw = pair_twirl(d, D, n);
  LabeledOperator with_p =
      tensor(tw, LabeledOperator::identity({{kPast, D}}));
  std::vector<std::string> order;
  for (int i = 1; i <= n; ++i) order.push_back(in_label(i));
  order.push_back(kPast);
  for (int i = 1; i <= n; ++i) order.push_back(out_label(i));
  with_p = reorder(with_p, order);
  const LabeledOperator xi = full_xi(d, D, n);
  LabeledOperator out = tensoralg::add(with_p, xi, -static_cast<double>(d));
  return LabeledOperator(out.systems(), out.matrix() / (D - d));
}

LabeledOperator comb_sigma(int d, int n) {
  const long long dim = ipow(d, 2 * n + 1);
  check_allocation(16ull * static_cast<unsigned long long>(dim) *
                       static_cast<unsigned long long>(dim),
                   "comb_sigma");
  MatrixXd acc = MatrixXd::Zero(dim, dim);
  for (const auto& lam : young::enumerate_diagrams(n, d)) {
    const auto units_l = tensoralg::all_matrix_units(lam, d);
    const long long dl = young::dim_sym(lam);
    for (const auto& mu : young::add_box(lam, d)) {
      const auto units_m = tensoralg::all_matrix_units(mu, d);
      const long long dm = young::dim_sym(mu);
      const double w = static_cast<double>(young::hook_product(lam)) /
                       static_cast<double>(young::hook_product(mu)) /
                       static_cast<double>(young::dim_unitary(mu, d));
      for (long long a = 0; a < dl; ++a) {
        const int ea = young::extend_index(lam, static_cast<int>(a), mu);
        for (long long b = 0; b < dl; ++b) {
          const int eb = young::extend_index(lam, static_cast<int>(b), mu);
          accumulate_kron(acc, units_l[static_cast<size_t>(a * dl + b)],
                          units_m[static_cast<size_t>(ea * dm + eb)], w);
        }
      }
    }
  }
  std::vector<SystemLabel> sys;
  for (int i = 1; i <= n; ++i) sys.push_back({in_label(i), d});
  for (int i = 1; i <= n; ++i) sys.push_back({out_prime_label(i), d});
  sys.push_back({kPastPrime, d});
  return LabeledOperator(sys, acc.cast<tensoralg::Complex>());
}

LabeledOperator t_i_choi(int d, int D, int n) {
  const long long dim = ipow(d, n + 1) * ipow(D, n + 1);
  check_allocation(16ull * static_cast<unsigned long long>(dim) *
                       static_cast<unsigned long long>(dim),
                   "t_i_choi");
  MatrixXd acc = MatrixXd::Zero(dim, dim);
  for (const auto& mu : young::enumerate_diagrams(n + 1, d)) {
    const auto units_d = tensoralg::all_matrix_units(mu, d);
    const auto units_D = tensoralg::all_matrix_units(mu, D);
    const double w = 1.0 / static_cast<double>(young::dim_unitary(mu, d));
    const long long dm = young::dim_sym(mu);
    for (long long i = 0; i < dm; ++i)
      for (long long j = 0; j < dm; ++j)
        accumulate_kron(acc, units_d[static_cast<size_t>(i * dm + j)],
                        units_D[static_cast<size_t>(i * dm + j)], w);
  }
  std::vector<SystemLabel> sys;
  sys.push_back({kPastPrime, d});
  for (int i = 1; i <= n; ++i) sys.push_back({out_prime_label(i), d});
  sys.push_back({kPast, D});
  for (int i = 1; i <= n; ++i) sys.push_back({out_label(i), D});
  return LabeledOperator(sys, acc.cast<tensoralg::Complex>());
}

LabeledOperator adjoint_target(const Eigen::MatrixXcd& V,
                               const std::string& p_label,
                               const std::string& f_label,
                               const std::string& flag_label) {
  const long long D = V.rows();
  const long long d = V.cols();
  const Eigen::MatrixXcd proj = V * V.adjoint();
  const long long block = d * 2;
  Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(D * block, D * block);
  for (long long a = 0; a < D; ++a)
    for (long long b = 0; b < D; ++b) {
      // V^dag |a><b| V on F, success flag.
      const Eigen::MatrixXcd body = V.adjoint().col(a) * V.row(b);
      for (long long f = 0; f < d; ++f)
        for (long long g = 0; g < d; ++g)
          J(a * block + f * 2 + 0, b * block + g * 2 + 0) = body(f, g);
      // Tr[(1 - Pi)|a><b|] (1/d) on F, failure flag.
      const tensoralg::Complex w =
          ((a == b ? 1.0 : 0.0) - proj(b, a)) / static_cast<double>(d);
      for (long long f = 0; f < d; ++f)
        J(a * block + f * 2 + 1, b * block + f * 2 + 1) = w;
    }
  return LabeledOperator({{p_label, static_cast<int>(D)},
                          {f_label, static_cast<int>(d)},
                          {flag_label, 2}},
                         std::move(J));
}

}  // namespace isokit::taskops

#pragma once

// Dense tensor-network primitives on operators with named subsystems:
// tensor products, partial trace/transpose, reordering, the link product,
// Choi vectors, slot-permutation operators, commutant matrix units of the
// collective unitary action, and Haar sampling.
//
// Basis convention: an operator on systems (S_1, ..., S_k) uses row-major
// composite indices, the first system being most significant.

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "isokit/symrep.hpp"
#include "isokit/young.hpp"

namespace isokit::tensoralg {

using Complex = std::complex<double>;

struct SystemLabel {
  std::string name;
  int dim = 0;
  friend bool operator==(const SystemLabel& a, const SystemLabel& b) {
    return a.name == b.name && a.dim == b.dim;
  }
};

// An operator together with the ordered list of subsystems it acts on.
// An empty system list denotes a scalar (1x1 matrix).
class LabeledOperator {
 public:
  LabeledOperator();  // scalar 1
  LabeledOperator(std::vector<SystemLabel> systems, Eigen::MatrixXcd mat);

  static LabeledOperator identity(std::vector<SystemLabel> systems);
  static LabeledOperator scalar(Complex value);

  const std::vector<SystemLabel>& systems() const { return systems_; }
  const Eigen::MatrixXcd& matrix() const { return mat_; }
  Eigen::MatrixXcd& matrix() { return mat_; }
  long long total_dim() const { return mat_.rows(); }
  // Index of the named system, or -1.
  int find(const std::string& name) const;

 private:
  std::vector<SystemLabel> systems_;
  Eigen::MatrixXcd mat_;
};

// Tensor product; the systems of B follow those of A.  Label sets must be
// disjoint.
LabeledOperator tensor(const LabeledOperator& A, const LabeledOperator& B);

// Trace out the named systems (all must exist).
LabeledOperator partial_trace(const LabeledOperator& A,
                              const std::vector<std::string>& names);

// Transpose the named subsystems in the computational basis.
LabeledOperator partial_transpose(const LabeledOperator& A,
                                  const std::vector<std::string>& names);

// Reorder tensor factors to the given label order (a permutation of the
// current labels).
LabeledOperator reorder(const LabeledOperator& A,
                        const std::vector<std::string>& order);

// Link product over the shared labels S: Tr_S[(A^{T_S} (x) 1)(1 (x) B)],
// defined on (labels(A) \ S) followed by (labels(B) \ S).  Shared labels must
// carry equal dimensions.  With no shared labels this is the tensor product.
LabeledOperator link(const LabeledOperator& A, const LabeledOperator& B);

// Trace of the full operator.
Complex trace(const LabeledOperator& A);

// Hilbert-Schmidt pairing Tr[A B] matching systems by label.
Complex pairing(const LabeledOperator& A, const LabeledOperator& B);

// max_ij |A_ij - B_ij| after aligning B's systems with A's.
double max_abs_diff(const LabeledOperator& A, const LabeledOperator& B);

// A + c B after aligning B's systems with A's.
LabeledOperator add(const LabeledOperator& A, const LabeledOperator& B,
                    Complex coeff = Complex(1, 0));

// Conjugate one subsystem: (1 (x) W (x) 1) A (1 (x) W (x) 1)^dagger with W
// acting on the named system (W is new_dim x old_dim; the label keeps its
// name and takes W's row dimension).
LabeledOperator conjugate_system(const LabeledOperator& A,
                                 const std::string& name,
                                 const Eigen::MatrixXcd& W);

// Choi vector |V>> = sum_k |k>_in (x) V|k>_out of a D x d matrix V, on the
// composite (in, out) with dims (d, D).
Eigen::VectorXcd choi_vector(const Eigen::MatrixXcd& V);

// Rank-1 Choi operator |V>><<V| on systems (in, out).
LabeledOperator isometry_choi(const Eigen::MatrixXcd& V, const SystemLabel& in,
                              const SystemLabel& out);

// Slot-permutation operator on (C^dim)^{(x) n}: moves the state in slot m to
// slot pi(m), i.e. P|psi_1 ... psi_n> = |psi_{pi^{-1}(1)} ... psi_{pi^{-1}(n)}>.
Eigen::MatrixXd permutation_operator(const symrep::Perm& pi, int dim);

// Commutant matrix unit E^{mu,d}_{ij} on (C^d)^{(x) n}, n = |mu|:
// (dim_sym(mu)/n!) sum_sigma [rep_mu(sigma)]_{ij} P_sigma.
// These satisfy E_{ij} E_{kl} = delta_{jk} E_{il} and Tr E_{ij} =
// delta_{ij} dim_unitary(mu, d).
Eigen::MatrixXd matrix_unit(const young::Diagram& mu, int i, int j, int d);

// All units of one shape in one sweep; entry i*dim_sym+j is E_{ij}.
std::vector<Eigen::MatrixXd> all_matrix_units(const young::Diagram& mu, int d);

// Isotypic projector sum_i E^{mu,d}_{ii}.
Eigen::MatrixXd young_projector(const young::Diagram& mu, int d);

// Haar-random unitary on C^d (Ginibre + QR, phases fixed by R's diagonal).
Eigen::MatrixXcd haar_unitary(int d, std::mt19937_64& rng);

// Haar-random isometry C^d -> C^D (D x d), same construction.
Eigen::MatrixXcd haar_isometry(int D, int d, std::mt19937_64& rng);

}  // namespace isokit::tensoralg

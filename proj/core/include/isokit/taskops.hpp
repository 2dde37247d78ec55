#pragma once

// Operators defining the figures of merit for transforming n uses of an
// unknown isometry V: C^d -> C^D.
//
// Three families of Haar-averaged operators are used throughout:
//   full_omega : (1/d^2) Int dV |V>><<V|^{(x)n} (x) |V>><<V|  on I^n,F,P,O^n
//   full_xi    : (1/d)   Int dV |V>><<V|^{(x)n} (x) Pi_{Im V} on I^n,P,O^n
//   full_sigma : 1/(D-d) Int dV |V>><<V|^{(x)n} (x) (1 - Pi_{Im V})
// together with their symmetry-reduced blocks.  Block index conventions:
// the collective-action matrix units E^{mu,d} on the d-dimensional systems
// use the symbol order (I_1..I_n[,F]) and E^{nu,D} on the D-dimensional
// systems use (P,O_1..O_n).  A block for the shape pair (lam,nu) is indexed
// by composite (a,k) = a*dim_sym(nu)+k with a a tableau index of lam (d side)
// and k one of nu (D side).
//
// All blocks are real symmetric rank-1 outer products u u^T dressed by the
// orthogonal-form matrix of the full cycle (1 2 ... n+1); the dressing is
// forced by writing the pair-ordered Haar twirl in the symbol order above.

#include <Eigen/Dense>
#include <map>
#include <utility>

#include "isokit/tensoralg.hpp"
#include "isokit/young.hpp"

namespace isokit::taskops {

using DiagramPair = std::pair<young::Diagram, young::Diagram>;

// Standard system labels.
std::string in_label(int i);        // "I1", "I2", ...
std::string out_label(int i);       // "O1", ...
std::string out_prime_label(int i); // "O'1", ...
inline const char* kFuture = "F";
inline const char* kPast = "P";
inline const char* kPastPrime = "P'";

// Symmetry-reduced blocks.  Shapes: mu in Y_d^{n+1} for omega; lam in Y_d^n
// with nu = lam + one box (depth <= d for xi, depth <= D for sigma, D > d).
Eigen::MatrixXd omega_block(const young::Diagram& mu, int d, int D);
Eigen::MatrixXd xi_block(const young::Diagram& lam, const young::Diagram& nu,
                         int d, int D);
Eigen::MatrixXd sigma_block(const young::Diagram& lam, const young::Diagram& nu,
                            int d, int D);

// All blocks of the three families at once.
struct TaskOperators {
  int d = 0, D = 0, n = 0;
  std::map<young::Diagram, Eigen::MatrixXd> omega;
  std::map<DiagramPair, Eigen::MatrixXd> xi;
  std::map<DiagramPair, Eigen::MatrixXd> sigma;
};
TaskOperators build_task_operators(int d, int D, int n);

// Full-space counterparts, evaluated exactly through the matrix-unit
// expansion of the Haar twirl (no sampling).
tensoralg::LabeledOperator full_omega(int d, int D, int n);
tensoralg::LabeledOperator full_xi(int d, int D, int n);
tensoralg::LabeledOperator full_sigma(int d, int D, int n);

// Assemble sum_{mu,nu} sum x_{(ik),(jl)} E^{mu,d}_{ij} (x) E^{nu,D}_{kl}
// from coefficient blocks, on d-side labels (I_1..I_n[,F]) taken from
// `d_side_symbols` and D-side labels (P,O_1..O_n).  Used to cross-check the
// block forms against the full-space constructions.
tensoralg::LabeledOperator assemble_blocks(
    int d, int D, const std::vector<std::string>& d_side_labels,
    const std::vector<std::string>& D_side_labels,
    const std::map<DiagramPair, Eigen::MatrixXd>& blocks);

// Comb operator appearing in the image-mismatch branch of the inversion
// comb: sum over lam in Y_d^n and mu = lam+box (depth <= d) of
// hook(lam)/hook(mu) E^{lam,d}_{ab} (x) E^{mu,d}_{ext(a),ext(b)} / m_mu^{(d)}
// on I^n (x) O'^n (x) P'.
tensoralg::LabeledOperator comb_sigma(int d, int n);

// Choi operator of the success branch of the universal inversion comb:
// sum over mu in Y_d^{n+1} of E^{mu,d}_{ij} (x) E^{mu,D}_{ij} / m_mu^{(d)}
// on (P',O'^n) (d side) and (P,O^n) (D side).
tensoralg::LabeledOperator t_i_choi(int d, int D, int n);

// Choi operator on (P, F, flag) of the flagged adjoint channel
// rho |-> V^dag rho V (x) |0><0| + Tr[(1-Pi_{Im V}) rho] (1/d) (x) |1><1|.
tensoralg::LabeledOperator adjoint_target(const Eigen::MatrixXcd& V,
                                          const std::string& p_label,
                                          const std::string& f_label,
                                          const std::string& flag_label);

}  // namespace isokit::taskops

#pragma once

// Self-contained primal-dual interior-point solver for block-diagonal
// semidefinite programs with Hermitian blocks, in equality standard form
//
//     optimize  Tr[C X]   s.t.  Tr[A_i X] = b_i,  X >= 0 (block-diagonal),
//
// using a Mehrotra predictor-corrector with the HKM search direction and a
// dense Cholesky of the Schur complement.  Problems whose data are entirely
// real are solved natively in real arithmetic; genuinely complex Hermitian
// data are routed through the real embedding, which preserves optimal
// values exactly.  An SDPA sparse-format exporter is provided for external
// cross-validation.

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

namespace isokit::sdpsolve {

enum class Sense { minimize, maximize };

struct Constraint {
  // Block index -> Hermitian coefficient matrix; blocks not listed are zero.
  std::map<int, Eigen::MatrixXcd> blocks;
  double rhs = 0.0;
};

struct SdpProblem {
  std::vector<int> block_sizes;
  // Objective blocks, same length and sizes as block_sizes (empty matrix =
  // zero block).
  std::vector<Eigen::MatrixXcd> objective;
  std::vector<Constraint> constraints;
  Sense sense = Sense::minimize;
};

struct SolverConfig {
  double tol_gap = 1e-8;    // relative duality gap target
  double tol_feas = 1e-8;   // primal/dual residual target
  int max_iter = 200;
  double damping = 0.98;    // step fraction to the cone boundary
  bool verbose = false;
};

enum class SolveStatus { optimal, max_iter, infeasible_detected, numerical_failure };

const char* to_string(SolveStatus s);

struct SolveResult {
  SolveStatus status = SolveStatus::numerical_failure;
  double primal_value = 0.0;  // in the problem's own sense
  double dual_value = 0.0;
  double gap = 0.0;           // |primal-dual| / (1+|primal|)
  int iterations = 0;
  std::vector<Eigen::MatrixXcd> block_solution;  // primal X blocks
  std::vector<double> dual_multipliers;          // y
  std::string diagnostics;
};

// Validate sizes and Hermiticity; throws DomainError on malformed input.
void validate(const SdpProblem& problem);

SolveResult solve(const SdpProblem& problem, const SolverConfig& config = {});

// Map each Hermitian block H = A + iB to [[A,-B],[B,A]] with all coefficient
// matrices rescaled by 1/2, so optimal values are preserved exactly.
SdpProblem to_real_embedding(const SdpProblem& problem);

// SDPA sparse ".dat-s" text for a problem with real data (apply
// to_real_embedding first if needed).  The file encodes
//     max Tr[F_0 Y]  s.t.  Tr[F_i Y] = c_i,  Y >= 0
// with F_0 the objective in maximize sense (negated for minimize problems).
std::string export_sdpa(const SdpProblem& problem);

}  // namespace isokit::sdpsolve

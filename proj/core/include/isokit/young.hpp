#pragma once

// Young diagrams (integer partitions), hook lengths, dimension formulas,
// box addition/removal, standard tableaux, and the 0/1 embedding matrices
// that align the tableau bases of a diagram and its one-box extensions.
//
// Conventions used throughout the library:
//  * A diagram is a weakly decreasing vector of positive ints; {} is the
//    empty diagram (hook product 1, both dimensions 1).
//  * enumerate_diagrams lists diagrams in descending lexicographic order.
//  * A standard tableau of shape mu |- n is stored as its growth sequence:
//    rows[t] = 0-based row receiving symbol t+1.  Tableaux are enumerated in
//    ascending lexicographic order of the growth sequence, and referred to
//    by their 0-based position in that list.

#include <Eigen/Dense>
#include <vector>

#include "isokit/config.hpp"

namespace isokit::young {

using Diagram = std::vector<int>;
using Tableau = std::vector<int>;

// Unbounded depth marker for add_box.
inline constexpr int kUnbounded = -1;

// Throws DomainError unless parts are positive and weakly decreasing.
void validate(const Diagram& mu);

// Number of boxes.
int size(const Diagram& mu);

// All diagrams of n boxes with at most d rows (d = kUnbounded for no limit),
// in descending lexicographic order.
std::vector<Diagram> enumerate_diagrams(int n, int d = kUnbounded);

// Product of hook lengths over all boxes (1 for the empty diagram).
long long hook_product(const Diagram& mu);

// Dimension of the symmetric-group irrep of shape mu: n! / hook_product.
long long dim_sym(const Diagram& mu);

// Dimension of the unitary-group irrep of shape mu at rank d:
// prod (d + col - row) / hook_product; zero when mu has more than d rows.
long long dim_unitary(const Diagram& mu, int d);

// Diagrams obtained by adding one box, keeping at most d rows
// (d = kUnbounded for no limit).  Ordered by the row the box is added to.
std::vector<Diagram> add_box(const Diagram& mu, int d = kUnbounded);

// Diagrams obtained by removing one box, ordered by the row it is removed
// from (top to bottom).
std::vector<Diagram> remove_box(const Diagram& mu);

// All standard tableaux of shape mu, ascending lex on growth sequences.
// The list is cached; the reference stays valid for the program lifetime.
const std::vector<Tableau>& enumerate_tableaux(const Diagram& mu);

// 0-based index (within enumerate_tableaux(mu)) of the tableau obtained from
// tableau `a` of shape `lam` by appending the next symbol in the box mu\lam.
// Requires mu to be lam plus one box.
int extend_index(const Diagram& lam, int a, const Diagram& mu);

// Embedding matrix X^gamma_lam of size dim_sym(gamma) x dim_sym(lam):
// row a has a single 1 at column extend_index(gamma, a, lam).
// Requires lam to be gamma plus one box.
Eigen::MatrixXd embedding(const Diagram& gamma, const Diagram& lam);

// Index of `mu` within enumerate_diagrams(size(mu), d); -1 when absent.
int diagram_index(const Diagram& mu, int d = kUnbounded);

// Signed content (column - row) of the box of `tab` holding symbol t (1-based).
int content_of_symbol(const Tableau& tab, int t);

}  // namespace isokit::young

#pragma once

// Irreducible representations of the symmetric group in Young's orthogonal
// form.  Matrices are real orthogonal and act on the standard-tableau basis
// in the order fixed by young::enumerate_tableaux.
//
// Permutations are passed in 0-based one-line notation: sigma[i] is the image
// of i.  Composition is composition of functions, (sigma*tau)(i) =
// sigma(tau(i)), and perm_rep is a homomorphism for that composition.

#include <Eigen/Dense>
#include <vector>

#include "isokit/young.hpp"

namespace isokit::symrep {

using Perm = std::vector<int>;

// Composition (sigma*tau)(i) = sigma(tau(i)).
Perm compose(const Perm& sigma, const Perm& tau);
Perm inverse(const Perm& sigma);
Perm identity_perm(int n);

// All n! permutations of {0..n-1} (lexicographic).
std::vector<Perm> all_perms(int n);

// Representation matrix of the adjacent transposition (k, k+1), 1 <= k < n,
// for shape mu |- n.  Diagonal entries 1/r and couplings sqrt(1 - 1/r^2),
// where r is the signed axial distance from symbol k to k+1.  Cached per
// (mu, k); the reference stays valid for the program lifetime.
const Eigen::MatrixXd& adjacent_rep(const young::Diagram& mu, int k);

// Representation matrix of an arbitrary permutation (size n = |mu|).
Eigen::MatrixXd perm_rep(const young::Diagram& mu, const Perm& sigma);

// Representation matrix of the full forward cycle (1 2 ... n) that maps
// symbol j to j+1 and n to 1.
Eigen::MatrixXd cycle_rep(const young::Diagram& mu);

}  // namespace isokit::symrep

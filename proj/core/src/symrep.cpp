#include "isokit/symrep.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <utility>

namespace isokit::symrep {

Perm compose(const Perm& sigma, const Perm& tau) {
  if (sigma.size() != tau.size()) throw DomainError("compose: size mismatch");
  Perm out(sigma.size());
  for (std::size_t i = 0; i < tau.size(); ++i) out[i] = sigma[tau[i]];
  return out;
}

Perm inverse(const Perm& sigma) {
  Perm out(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) out[sigma[i]] = static_cast<int>(i);
  return out;
}

Perm identity_perm(int n) {
  Perm out(n);
  std::iota(out.begin(), out.end(), 0);
  return out;
}

std::vector<Perm> all_perms(int n) {
  Perm p = identity_perm(n);
  std::vector<Perm> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

const Eigen::MatrixXd& adjacent_rep(const young::Diagram& mu, int k) {
  const int n = young::size(mu);
  if (k < 1 || k >= n) throw DomainError("adjacent_rep: k out of range");
  static std::map<std::pair<young::Diagram, int>, Eigen::MatrixXd> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto key = std::make_pair(mu, k);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  const auto& tabs = young::enumerate_tableaux(mu);
  const int dim = static_cast<int>(tabs.size());
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(dim, dim);
  for (int t = 0; t < dim; ++t) {
    const auto& tab = tabs[t];
    const int r = young::content_of_symbol(tab, k + 1) - young::content_of_symbol(tab, k);
    M(t, t) = 1.0 / r;
    if (std::abs(r) >= 2) {
      // Swapping k and k+1 keeps the tableau standard; couple to it.
      young::Tableau swapped = tab;
      std::swap(swapped[k - 1], swapped[k]);
      auto pos = std::lower_bound(tabs.begin(), tabs.end(), swapped);
      const int t2 = static_cast<int>(pos - tabs.begin());
      M(t, t2) = std::sqrt(1.0 - 1.0 / (static_cast<double>(r) * r));
    }
  }
  return cache.emplace(std::move(key), std::move(M)).first->second;
}

Eigen::MatrixXd perm_rep(const young::Diagram& mu, const Perm& sigma) {
  const int n = young::size(mu);
  if (static_cast<int>(sigma.size()) != n) {
    throw DomainError("perm_rep: permutation size must match |mu|");
  }
  const long long dim = young::dim_sym(mu);
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(dim, dim);
  // Bubble-sort the one-line form; each swap of positions (j, j+1) multiplies
  // sigma on the right by the transposition s_{j+1}, so sigma equals the
  // reversed product of the recorded transpositions and the representation
  // matrices multiply in that reversed order.
  Perm a = sigma;
  std::vector<int> swaps;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j + 1 < n; ++j) {
      if (a[j] > a[j + 1]) {
        std::swap(a[j], a[j + 1]);
        swaps.push_back(j + 1);  // 1-based adjacent transposition index
      }
    }
  }
  for (auto it = swaps.rbegin(); it != swaps.rend(); ++it) {
    M = M * adjacent_rep(mu, *it);
  }
  return M;
}

Eigen::MatrixXd cycle_rep(const young::Diagram& mu) {
  const int n = young::size(mu);
  const long long dim = young::dim_sym(mu);
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(dim, dim);
  // (1 2 ... n) = s_1 s_2 ... s_{n-1} as composition of functions.
  for (int k = 1; k < n; ++k) {
    M = M * adjacent_rep(mu, k);
  }
  return M;
}

}  // namespace isokit::symrep

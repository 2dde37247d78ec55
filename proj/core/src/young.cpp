#include "isokit/young.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace isokit {

ResourceConfig& resource_config() {
  static ResourceConfig cfg;
  return cfg;
}

void check_allocation(std::size_t bytes, const char* what) {
  const std::size_t cap = resource_config().memory_cap_mb * std::size_t(1024 * 1024);
  if (bytes > cap) {
    throw ResourceError(std::string(what) + ": allocation of " +
                        std::to_string(bytes >> 20) + " MiB exceeds cap of " +
                        std::to_string(resource_config().memory_cap_mb) + " MiB");
  }
}

}  // namespace isokit

namespace isokit::young {

namespace {

// Multiplies with a 128-bit intermediate and insists the result fits int64.
long long checked_mul(long long a, long long b) {
  __int128 p = static_cast<__int128>(a) * b;
  if (p > INT64_MAX || p < INT64_MIN) {
    throw DomainError("integer overflow in dimension computation");
  }
  return static_cast<long long>(p);
}

void enumerate_rec(int remaining, int max_part, int rows_left, Diagram& cur,
                   std::vector<Diagram>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  if (rows_left == 0) return;
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    cur.push_back(part);
    enumerate_rec(remaining - part, part, rows_left - 1, cur, out);
    cur.pop_back();
  }
}

void tableaux_rec(const Diagram& mu, Diagram& filled, Tableau& growth,
                  std::vector<Tableau>& out) {
  const int n = size(mu);
  if (static_cast<int>(growth.size()) == n) {
    out.push_back(growth);
    return;
  }
  for (int r = 0; r < static_cast<int>(mu.size()); ++r) {
    // The next symbol may go to row r iff the row is not full and stays
    // strictly shorter than the row above.
    if (filled[r] < mu[r] && (r == 0 || filled[r] < filled[r - 1])) {
      ++filled[r];
      growth.push_back(r);
      tableaux_rec(mu, filled, growth, out);
      growth.pop_back();
      --filled[r];
    }
  }
}

}  // namespace

void validate(const Diagram& mu) {
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (mu[i] <= 0) throw DomainError("diagram parts must be positive");
    if (i > 0 && mu[i] > mu[i - 1]) {
      throw DomainError("diagram parts must be weakly decreasing");
    }
  }
}

int size(const Diagram& mu) {
  int n = 0;
  for (int p : mu) n += p;
  return n;
}

std::vector<Diagram> enumerate_diagrams(int n, int d) {
  if (n < 0) throw DomainError("enumerate_diagrams: n must be nonnegative");
  if (d != kUnbounded && d < 0) throw DomainError("enumerate_diagrams: bad depth");
  if (n == 0) return {Diagram{}};
  if (d == 0) return {};
  std::vector<Diagram> out;
  Diagram cur;
  enumerate_rec(n, n, d == kUnbounded ? n : d, cur, out);
  // The recursion emits parts largest-first, which is already descending lex.
  return out;
}

long long hook_product(const Diagram& mu) {
  validate(mu);
  // Column lengths (conjugate diagram).
  const int cols = mu.empty() ? 0 : mu[0];
  std::vector<int> collen(cols, 0);
  for (int len : mu) {
    for (int j = 0; j < len; ++j) ++collen[j];
  }
  long long prod = 1;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    for (int j = 0; j < mu[i]; ++j) {
      const int arm = mu[i] - j - 1;
      const int leg = collen[j] - static_cast<int>(i) - 1;
      prod = checked_mul(prod, arm + leg + 1);
    }
  }
  return prod;
}

long long dim_sym(const Diagram& mu) {
  const int n = size(mu);
  long long fact = 1;
  for (int t = 2; t <= n; ++t) fact = checked_mul(fact, t);
  return fact / hook_product(mu);
}

long long dim_unitary(const Diagram& mu, int d) {
  validate(mu);
  if (d < 0) throw DomainError("dim_unitary: rank must be nonnegative");
  if (static_cast<int>(mu.size()) > d) return 0;
  long long num = 1;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    for (int j = 0; j < mu[i]; ++j) {
      num = checked_mul(num, d + j - static_cast<int>(i));
    }
  }
  return num / hook_product(mu);
}

std::vector<Diagram> add_box(const Diagram& mu, int d) {
  validate(mu);
  std::vector<Diagram> out;
  const int rows = static_cast<int>(mu.size());
  for (int r = 0; r <= rows; ++r) {
    const bool fits_depth = (d == kUnbounded) || (r < d);
    if (!fits_depth) break;
    const int cur = (r < rows) ? mu[r] : 0;
    const int above = (r == 0) ? INT32_MAX : mu[r - 1];
    if (cur < above) {
      Diagram ext = mu;
      if (r < rows) {
        ++ext[r];
      } else {
        ext.push_back(1);
      }
      out.push_back(std::move(ext));
    }
  }
  return out;
}

std::vector<Diagram> remove_box(const Diagram& mu) {
  validate(mu);
  std::vector<Diagram> out;
  const int rows = static_cast<int>(mu.size());
  for (int r = 0; r < rows; ++r) {
    const int below = (r + 1 < rows) ? mu[r + 1] : 0;
    if (mu[r] > below) {
      Diagram red = mu;
      if (--red[r] == 0) red.pop_back();
      out.push_back(std::move(red));
    }
  }
  return out;
}

const std::vector<Tableau>& enumerate_tableaux(const Diagram& mu) {
  validate(mu);
  static std::map<Diagram, std::vector<Tableau>> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(mu);
  if (it != cache.end()) return it->second;
  std::vector<Tableau> out;
  Diagram filled(mu.size(), 0);
  Tableau growth;
  tableaux_rec(mu, filled, growth, out);
  // The recursion tries rows top-down at each step, which is ascending lex.
  return cache.emplace(mu, std::move(out)).first->second;
}

int extend_index(const Diagram& lam, int a, const Diagram& mu) {
  const auto& small = enumerate_tableaux(lam);
  if (a < 0 || a >= static_cast<int>(small.size())) {
    throw DomainError("extend_index: tableau index out of range");
  }
  if (size(mu) != size(lam) + 1) {
    throw DomainError("extend_index: mu must be lam plus one box");
  }
  int grow_row = -1;
  for (std::size_t r = 0; r < mu.size(); ++r) {
    const int lam_r = (r < lam.size()) ? lam[r] : 0;
    if (mu[r] == lam_r + 1) {
      if (grow_row != -1) throw DomainError("extend_index: mu is not lam plus one box");
      grow_row = static_cast<int>(r);
    } else if (mu[r] != lam_r) {
      throw DomainError("extend_index: mu is not lam plus one box");
    }
  }
  if (grow_row == -1) throw DomainError("extend_index: mu is not lam plus one box");
  Tableau ext = small[a];
  ext.push_back(grow_row);
  const auto& big = enumerate_tableaux(mu);
  auto it = std::lower_bound(big.begin(), big.end(), ext);
  if (it == big.end() || *it != ext) {
    throw DomainError("extend_index: extension not found (internal error)");
  }
  return static_cast<int>(it - big.begin());
}

Eigen::MatrixXd embedding(const Diagram& gamma, const Diagram& lam) {
  const long long dg = dim_sym(gamma);
  const long long dl = dim_sym(lam);
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(dg, dl);
  for (int a = 0; a < dg; ++a) {
    X(a, extend_index(gamma, a, lam)) = 1.0;
  }
  return X;
}

int diagram_index(const Diagram& mu, int d) {
  const auto all = enumerate_diagrams(size(mu), d);
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (all[i] == mu) return static_cast<int>(i);
  }
  return -1;
}

int content_of_symbol(const Tableau& tab, int t) {
  if (t < 1 || t > static_cast<int>(tab.size())) {
    throw DomainError("content_of_symbol: symbol out of range");
  }
  const int row = tab[t - 1];
  int col = 0;
  for (int s = 0; s < t - 1; ++s) {
    if (tab[s] == row) ++col;
  }
  return col - row;
}

}  // namespace isokit::young

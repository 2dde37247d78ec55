#include "isokit/tensoralg.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "isokit/config.hpp"

namespace isokit::tensoralg {

namespace {

long long product_dim(const std::vector<SystemLabel>& sys) {
  long long acc = 1;
  for (const auto& s : sys) {
    if (s.dim <= 0) throw DomainError("system dimension must be positive");
    acc *= s.dim;
  }
  return acc;
}

// Row-major strides: first system most significant.
std::vector<long long> strides_of(const std::vector<SystemLabel>& sys) {
  std::vector<long long> s(sys.size());
  long long acc = 1;
  for (int k = static_cast<int>(sys.size()) - 1; k >= 0; --k) {
    s[static_cast<size_t>(k)] = acc;
    acc *= sys[static_cast<size_t>(k)].dim;
  }
  return s;
}

// Composite indices of the subset `pos` of A's systems, as offsets into A's
// composite index (the remaining digits set to zero).
std::vector<long long> subset_offsets(const std::vector<SystemLabel>& sys,
                                      const std::vector<int>& pos) {
  const auto strides = strides_of(sys);
  long long count = 1;
  for (int p : pos) count *= sys[static_cast<size_t>(p)].dim;
  std::vector<long long> off(static_cast<size_t>(count), 0);
  long long repeat = count;
  for (int p : pos) {
    const int dp = sys[static_cast<size_t>(p)].dim;
    repeat /= dp;
    // Digit for position p cycles with period `repeat`.
    for (long long i = 0; i < count; ++i) {
      off[static_cast<size_t>(i)] +=
          ((i / repeat) % dp) * strides[static_cast<size_t>(p)];
    }
  }
  return off;
}

std::vector<int> positions_of(const LabeledOperator& A,
                              const std::vector<std::string>& names) {
  std::vector<int> pos;
  pos.reserve(names.size());
  for (const auto& nm : names) {
    const int p = A.find(nm);
    if (p < 0) throw DomainError("unknown system label: " + nm);
    pos.push_back(p);
  }
  std::sort(pos.begin(), pos.end());
  if (std::adjacent_find(pos.begin(), pos.end()) != pos.end())
    throw DomainError("duplicate system label in selection");
  return pos;
}

}  // namespace

LabeledOperator::LabeledOperator()
    : systems_(), mat_(Eigen::MatrixXcd::Ones(1, 1)) {}

LabeledOperator::LabeledOperator(std::vector<SystemLabel> systems,
                                 Eigen::MatrixXcd mat)
    : systems_(std::move(systems)), mat_(std::move(mat)) {
  const long long dim = product_dim(systems_);
  if (mat_.rows() != dim || mat_.cols() != dim)
    throw DomainError("matrix size does not match the system dimensions");
  for (size_t a = 0; a < systems_.size(); ++a)
    for (size_t b = a + 1; b < systems_.size(); ++b)
      if (systems_[a].name == systems_[b].name)
        throw DomainError("duplicate system label: " + systems_[a].name);
}

LabeledOperator LabeledOperator::identity(std::vector<SystemLabel> systems) {
  const long long dim = product_dim(systems);
  check_allocation(16ull * static_cast<unsigned long long>(dim) *
                       static_cast<unsigned long long>(dim),
                   "identity operator");
  return LabeledOperator(std::move(systems),
                         Eigen::MatrixXcd::Identity(dim, dim));
}

LabeledOperator LabeledOperator::scalar(Complex value) {
  Eigen::MatrixXcd m(1, 1);
  m(0, 0) = value;
  return LabeledOperator({}, std::move(m));
}

int LabeledOperator::find(const std::string& name) const {
  for (size_t k = 0; k < systems_.size(); ++k)
    if (systems_[k].name == name) return static_cast<int>(k);
  return -1;
}

LabeledOperator tensor(const LabeledOperator& A, const LabeledOperator& B) {
  std::vector<SystemLabel> sys = A.systems();
  for (const auto& s : B.systems()) {
    if (A.find(s.name) >= 0)
      throw DomainError("tensor: shared label " + s.name);
    sys.push_back(s);
  }
  const long long dim = A.total_dim() * B.total_dim();
  check_allocation(16ull * static_cast<unsigned long long>(dim) *
                       static_cast<unsigned long long>(dim),
                   "tensor product");
  Eigen::MatrixXcd out(dim, dim);
  const long long db = B.total_dim();
  for (long long i = 0; i < A.total_dim(); ++i)
    for (long long j = 0; j < A.total_dim(); ++j)
      out.block(i * db, j * db, db, db) = A.matrix()(i, j) * B.matrix();
  return LabeledOperator(std::move(sys), std::move(out));
}

LabeledOperator partial_trace(const LabeledOperator& A,
                              const std::vector<std::string>& names) {
  const auto traced = positions_of(A, names);
  std::vector<int> kept;
  for (int k = 0; k < static_cast<int>(A.systems().size()); ++k)
    if (!std::binary_search(traced.begin(), traced.end(), k)) kept.push_back(k);

  std::vector<SystemLabel> sys;
  for (int k : kept) sys.push_back(A.systems()[static_cast<size_t>(k)]);

  const auto off_k = subset_offsets(A.systems(), kept);
  const auto off_t = subset_offsets(A.systems(), traced);
  const long long dk = static_cast<long long>(off_k.size());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dk, dk);
  for (long long i = 0; i < dk; ++i)
    for (long long j = 0; j < dk; ++j) {
      Complex acc = 0;
      for (long long t : off_t)
        acc += A.matrix()(off_k[static_cast<size_t>(i)] + t,
                          off_k[static_cast<size_t>(j)] + t);
      out(i, j) = acc;
    }
  return LabeledOperator(std::move(sys), std::move(out));
}

LabeledOperator partial_transpose(const LabeledOperator& A,
                                  const std::vector<std::string>& names) {
  const auto swapped = positions_of(A, names);
  std::vector<int> fixed;
  for (int k = 0; k < static_cast<int>(A.systems().size()); ++k)
    if (!std::binary_search(swapped.begin(), swapped.end(), k))
      fixed.push_back(k);

  const auto off_f = subset_offsets(A.systems(), fixed);
  const auto off_s = subset_offsets(A.systems(), swapped);
  const long long df = static_cast<long long>(off_f.size());
  const long long ds = static_cast<long long>(off_s.size());
  Eigen::MatrixXcd out(A.total_dim(), A.total_dim());
  for (long long fi = 0; fi < df; ++fi)
    for (long long fj = 0; fj < df; ++fj)
      for (long long si = 0; si < ds; ++si)
        for (long long sj = 0; sj < ds; ++sj)
          out(off_f[static_cast<size_t>(fi)] + off_s[static_cast<size_t>(si)],
              off_f[static_cast<size_t>(fj)] + off_s[static_cast<size_t>(sj)]) =
              A.matrix()(
                  off_f[static_cast<size_t>(fi)] + off_s[static_cast<size_t>(sj)],
                  off_f[static_cast<size_t>(fj)] + off_s[static_cast<size_t>(si)]);
  return LabeledOperator(A.systems(), std::move(out));
}

LabeledOperator reorder(const LabeledOperator& A,
                        const std::vector<std::string>& order) {
  if (order.size() != A.systems().size())
    throw DomainError("reorder: label list must be a permutation");
  std::vector<int> pos;
  pos.reserve(order.size());
  std::vector<SystemLabel> sys;
  for (const auto& nm : order) {
    const int p = A.find(nm);
    if (p < 0) throw DomainError("reorder: unknown label " + nm);
    pos.push_back(p);
    sys.push_back(A.systems()[static_cast<size_t>(p)]);
  }
  {
    auto check = pos;
    std::sort(check.begin(), check.end());
    if (std::adjacent_find(check.begin(), check.end()) != check.end())
      throw DomainError("reorder: duplicate label");
  }

  const auto old_strides = strides_of(A.systems());
  const long long dim = A.total_dim();
  // map[new composite index] = old composite index.
  std::vector<long long> map(static_cast<size_t>(dim), 0);
  long long repeat = dim;
  for (size_t k = 0; k < sys.size(); ++k) {
    const int dk = sys[k].dim;
    repeat /= dk;
    const long long stride = old_strides[static_cast<size_t>(pos[k])];
    for (long long i = 0; i < dim; ++i)
      map[static_cast<size_t>(i)] += ((i / repeat) % dk) * stride;
  }
  Eigen::MatrixXcd out(dim, dim);
  for (long long i = 0; i < dim; ++i)
    for (long long j = 0; j < dim; ++j)
      out(i, j) = A.matrix()(map[static_cast<size_t>(i)],
                             map[static_cast<size_t>(j)]);
  return LabeledOperator(std::move(sys), std::move(out));
}

LabeledOperator link(const LabeledOperator& A, const LabeledOperator& B) {
  std::vector<std::string> shared, rest_a, rest_b;
  for (const auto& s : A.systems()) {
    const int p = B.find(s.name);
    if (p >= 0) {
      if (B.systems()[static_cast<size_t>(p)].dim != s.dim)
        throw DomainError("link: dimension mismatch on label " + s.name);
      shared.push_back(s.name);
    } else {
      rest_a.push_back(s.name);
    }
  }
  for (const auto& s : B.systems())
    if (A.find(s.name) < 0) rest_b.push_back(s.name);

  if (shared.empty()) return tensor(A, B);

  // Bring A to (rest_a, shared) and B to (shared, rest_b).
  std::vector<std::string> order_a = rest_a;
  order_a.insert(order_a.end(), shared.begin(), shared.end());
  std::vector<std::string> order_b = shared;
  order_b.insert(order_b.end(), rest_b.begin(), rest_b.end());
  const LabeledOperator A2 = reorder(A, order_a);
  const LabeledOperator B2 = reorder(B, order_b);

  long long ds = 1;
  for (const auto& nm : shared) {
    const auto& s = A.systems()[static_cast<size_t>(A.find(nm))];
    ds *= s.dim;
  }
  const long long da = A.total_dim() / ds;
  const long long db = B.total_dim() / ds;

  std::vector<SystemLabel> sys;
  for (const auto& nm : rest_a)
    sys.push_back(A.systems()[static_cast<size_t>(A.find(nm))]);
  for (const auto& nm : rest_b)
    sys.push_back(B.systems()[static_cast<size_t>(B.find(nm))]);

  check_allocation(16ull * static_cast<unsigned long long>(da * db) *
                       static_cast<unsigned long long>(da * db),
                   "link product");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(da * db, da * db);
  // Contracting A^{T_S}'s column-side shared index with B's row-side one and
  // closing the trace gives
  //   out[(x,u),(y,v)] = sum_{s,s'} A2[(x,s'),(y,s)] B2[(s',u),(s,v)].
  Eigen::MatrixXcd ma(da, da);
  for (long long s = 0; s < ds; ++s)
    for (long long s2 = 0; s2 < ds; ++s2) {
      for (long long x = 0; x < da; ++x)
        for (long long y = 0; y < da; ++y)
          ma(x, y) = A2.matrix()(x * ds + s2, y * ds + s);
      const auto mb = B2.matrix().block(s2 * db, s * db, db, db);
      for (long long x = 0; x < da; ++x)
        for (long long y = 0; y < da; ++y)
          out.block(x * db, y * db, db, db) += ma(x, y) * mb;
    }
  return LabeledOperator(std::move(sys), std::move(out));
}

Complex trace(const LabeledOperator& A) { return A.matrix().trace(); }

Complex pairing(const LabeledOperator& A, const LabeledOperator& B) {
  std::vector<std::string> order;
  for (const auto& s : A.systems()) order.push_back(s.name);
  const LabeledOperator B2 =
      B.systems().size() == order.size() ? reorder(B, order) : B;
  if (B2.total_dim() != A.total_dim())
    throw DomainError("pairing: operators act on different spaces");
  return (A.matrix() * B2.matrix()).trace();
}

double max_abs_diff(const LabeledOperator& A, const LabeledOperator& B) {
  std::vector<std::string> order;
  for (const auto& s : A.systems()) order.push_back(s.name);
  const LabeledOperator B2 =
      B.systems().size() == order.size() ? reorder(B, order) : B;
  if (B2.total_dim() != A.total_dim())
    throw DomainError("max_abs_diff: operators act on different spaces");
  return (A.matrix() - B2.matrix()).cwiseAbs().maxCoeff();
}

LabeledOperator add(const LabeledOperator& A, const LabeledOperator& B,
                    Complex coeff) {
  std::vector<std::string> order;
  for (const auto& s : A.systems()) order.push_back(s.name);
  const LabeledOperator B2 =
      B.systems().size() == order.size() ? reorder(B, order) : B;
  if (B2.total_dim() != A.total_dim())
    throw DomainError("add: operators act on different spaces");
  return LabeledOperator(A.systems(), A.matrix() + coeff * B2.matrix());
}

LabeledOperator conjugate_system(const LabeledOperator& A,
                                 const std::string& name,
                                 const Eigen::MatrixXcd& W) {
  const int p = A.find(name);
  if (p < 0) throw DomainError("conjugate_system: unknown label " + name);
  std::vector<std::string> order = {name};
  for (const auto& s : A.systems())
    if (s.name != name) order.push_back(s.name);
  const LabeledOperator A2 = reorder(A, order);
  if (W.cols() != A2.systems()[0].dim)
    throw DomainError("conjugate_system: W column count must match the label");
  const long long rest = A2.total_dim() / W.cols();
  Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(W.rows() * rest, A2.total_dim());
  for (long long i = 0; i < W.rows(); ++i)
    for (long long j = 0; j < W.cols(); ++j)
      big.block(i * rest, j * rest, rest, rest) =
          W(i, j) * Eigen::MatrixXcd::Identity(rest, rest);
  std::vector<SystemLabel> sys = A2.systems();
  sys[0].dim = static_cast<int>(W.rows());
  LabeledOperator out(sys, big * A2.matrix() * big.adjoint());
  // Restore the original system order.
  std::vector<std::string> back;
  for (const auto& s : A.systems()) back.push_back(s.name);
  return reorder(out, back);
}

Eigen::VectorXcd choi_vector(const Eigen::MatrixXcd& V) {
  const long long D = V.rows();
  const long long d = V.cols();
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d * D);
  for (long long k = 0; k < d; ++k)
    for (long long a = 0; a < D; ++a) v(k * D + a) = V(a, k);
  return v;
}

LabeledOperator isometry_choi(const Eigen::MatrixXcd& V, const SystemLabel& in,
                              const SystemLabel& out) {
  if (in.dim != V.cols() || out.dim != V.rows())
    throw DomainError("isometry_choi: label dimensions do not match V");
  const Eigen::VectorXcd v = choi_vector(V);
  return LabeledOperator({in, out}, v * v.adjoint());
}

Eigen::MatrixXd permutation_operator(const symrep::Perm& pi, int dim) {
  const int n = static_cast<int>(pi.size());
  const symrep::Perm inv = symrep::inverse(pi);
  long long total = 1;
  for (int k = 0; k < n; ++k) total *= dim;
  check_allocation(8ull * static_cast<unsigned long long>(total) *
                       static_cast<unsigned long long>(total),
                   "permutation operator");
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(total, total);
  std::vector<int> digits(static_cast<size_t>(n), 0);
  for (long long c = 0; c < total; ++c) {
    long long rem = c;
    for (int k = n - 1; k >= 0; --k) {
      digits[static_cast<size_t>(k)] = static_cast<int>(rem % dim);
      rem /= dim;
    }
    // Slot k of the image holds the digit from slot pi^{-1}(k).
    long long r = 0;
    for (int k = 0; k < n; ++k)
      r = r * dim + digits[static_cast<size_t>(inv[static_cast<size_t>(k)])];
    P(r, c) = 1.0;
  }
  return P;
}

namespace {

// Index map c -> r of P_sigma on (C^dim)^{(x) n}.
std::vector<long long> perm_index_map(const symrep::Perm& sigma, int dim) {
  const int n = static_cast<int>(sigma.size());
  const symrep::Perm inv = symrep::inverse(sigma);
  long long total = 1;
  for (int k = 0; k < n; ++k) total *= dim;
  std::vector<long long> map(static_cast<size_t>(total));
  std::vector<int> digits(static_cast<size_t>(n), 0);
  for (long long c = 0; c < total; ++c) {
    long long rem = c;
    for (int k = n - 1; k >= 0; --k) {
      digits[static_cast<size_t>(k)] = static_cast<int>(rem % dim);
      rem /= dim;
    }
    long long r = 0;
    for (int k = 0; k < n; ++k)
      r = r * dim + digits[static_cast<size_t>(inv[static_cast<size_t>(k)])];
    map[static_cast<size_t>(c)] = r;
  }
  return map;
}

double factorial_of(int n) {
  double f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

std::vector<Eigen::MatrixXd> all_matrix_units(const young::Diagram& mu, int d) {
  const int n = static_cast<int>(young::size(mu));
  const long long dm = young::dim_sym(mu);
  long long total = 1;
  for (int k = 0; k < n; ++k) total *= d;
  check_allocation(8ull * static_cast<unsigned long long>(dm * dm) *
                       static_cast<unsigned long long>(total) *
                       static_cast<unsigned long long>(total),
                   "matrix units");
  std::vector<Eigen::MatrixXd> units(
      static_cast<size_t>(dm * dm), Eigen::MatrixXd::Zero(total, total));
  const double w = static_cast<double>(dm) / factorial_of(n);
  for (const auto& sigma : symrep::all_perms(n)) {
    const Eigen::MatrixXd rep = symrep::perm_rep(mu, sigma);
    const auto map = perm_index_map(sigma, d);
    for (long long c = 0; c < total; ++c) {
      const long long r = map[static_cast<size_t>(c)];
      for (long long a = 0; a < dm; ++a)
        for (long long b = 0; b < dm; ++b)
          units[static_cast<size_t>(a * dm + b)](r, c) += w * rep(a, b);
    }
  }
  return units;
}

Eigen::MatrixXd matrix_unit(const young::Diagram& mu, int i, int j, int d) {
  const int n = static_cast<int>(young::size(mu));
  const long long dm = young::dim_sym(mu);
  if (i < 0 || j < 0 || i >= dm || j >= dm)
    throw DomainError("matrix_unit: tableau index out of range");
  long long total = 1;
  for (int k = 0; k < n; ++k) total *= d;
  Eigen::MatrixXd E = Eigen::MatrixXd::Zero(total, total);
  const double w = static_cast<double>(dm) / factorial_of(n);
  for (const auto& sigma : symrep::all_perms(n)) {
    const Eigen::MatrixXd rep = symrep::perm_rep(mu, sigma);
    const auto map = perm_index_map(sigma, d);
    const double coef = w * rep(i, j);
    if (coef == 0.0) continue;
    for (long long c = 0; c < total; ++c)
      E(map[static_cast<size_t>(c)], c) += coef;
  }
  return E;
}

Eigen::MatrixXd young_projector(const young::Diagram& mu, int d) {
  const int n = static_cast<int>(young::size(mu));
  long long total = 1;
  for (int k = 0; k < n; ++k) total *= d;
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(total, total);
  const double w =
      static_cast<double>(young::dim_sym(mu)) / factorial_of(n);
  for (const auto& sigma : symrep::all_perms(n)) {
    const double chi = symrep::perm_rep(mu, sigma).trace();
    const auto map = perm_index_map(sigma, d);
    for (long long c = 0; c < total; ++c)
      P(map[static_cast<size_t>(c)], c) += w * chi;
  }
  return P;
}

Eigen::MatrixXcd haar_unitary(int d, std::mt19937_64& rng) {
  return haar_isometry(d, d, rng);
}

Eigen::MatrixXcd haar_isometry(int D, int d, std::mt19937_64& rng) {
  if (d <= 0 || D < d) throw DomainError("haar_isometry: need D >= d >= 1");
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd G(D, d);
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < d; ++j) G(i, j) = Complex(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(G);
  Eigen::MatrixXcd Q =
      qr.householderQ() * Eigen::MatrixXcd::Identity(D, d);
  const Eigen::MatrixXcd R =
      qr.matrixQR().topLeftCorner(d, d).triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const Complex r = R(j, j);
    const double a = std::abs(r);
    if (a > 0) Q.col(j) *= r / a;
  }
  return Q;
}

}  // namespace isokit::tensoralg

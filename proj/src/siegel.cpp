#include "thetamult/siegel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "thetamult/symplectic.hpp"

namespace thetamult {

namespace {

constexpr double kPi = std::numbers::pi;

bool cholesky_ok(const RealMatrix& y) {
  const int n = static_cast<int>(y.size());
  RealMatrix L(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = y[i][j];
      for (int k = 0; k < j; ++k) s -= L[i][k] * L[j][k];
      if (i == j) {
        if (s <= 0.0) return false;
        L[i][i] = std::sqrt(s);
      } else {
        L[i][j] = s / L[j][j];
      }
    }
  }
  return true;
}

// In-place Gauss-Jordan with partial pivoting; returns a^{-1} b.
ComplexMatrix solve(ComplexMatrix a, ComplexMatrix b) {
  const int n = static_cast<int>(a.size());
  double scale = 0.0;
  for (const auto& row : a)
    for (const Complex& z : row) scale = std::max(scale, std::abs(z));
  const double tiny = 1e-13 * std::max(scale, 1.0);
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) < tiny)
      throw SingularDenominator("complex solve: negligible pivot");
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    const Complex inv = 1.0 / a[col][col];
    for (int j = 0; j < n; ++j) {
      a[col][j] *= inv;
      b[col][j] *= inv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const Complex f = a[r][col];
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        b[r][j] -= f * b[col][j];
      }
    }
  }
  return b;
}

Complex determinant(ComplexMatrix a) {
  const int n = static_cast<int>(a.size());
  Complex det = 1.0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (a[pivot][col] == 0.0) return 0.0;
    if (pivot != col) {
      std::swap(a[col], a[pivot]);
      det = -det;
    }
    det *= a[col][col];
    for (int r = col + 1; r < n; ++r) {
      const Complex f = a[r][col] / a[col][col];
      for (int j = col; j < n; ++j) a[r][j] -= f * a[col][j];
    }
  }
  return det;
}

// C tau + D and A tau + B as complex matrices.
ComplexMatrix affine_block(const IntMatrix& lin, const IntMatrix& off,
                           const ComplexMatrix& tau) {
  const int n = static_cast<int>(lin.size());
  ComplexMatrix out(n, std::vector<Complex>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Complex s = static_cast<double>(off[i][j]);
      for (int k = 0; k < n; ++k)
        s += static_cast<double>(lin[i][k]) * tau[k][j];
      out[i][j] = s;
    }
  return out;
}

IntMatrix int_identity(int n) {
  IntMatrix m(n, std::vector<int64_t>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMatrix int_zero(int n) { return IntMatrix(n, std::vector<int64_t>(n, 0)); }

IntMatrix int_mul(const IntMatrix& a, const IntMatrix& b) {
  const int n = static_cast<int>(a.size());
  IntMatrix out = int_zero(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (int j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

IntMatrix int_add(const IntMatrix& a, const IntMatrix& b) {
  const int n = static_cast<int>(a.size());
  IntMatrix out = a;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i][j] += b[i][j];
  return out;
}

}  // namespace

SiegelPoint::SiegelPoint(int g_, ComplexMatrix tau_) : g(g_), tau() {
  if (g < 1) throw std::invalid_argument("SiegelPoint: genus must be positive");
  if (static_cast<int>(tau_.size()) != g)
    throw std::invalid_argument("SiegelPoint: tau must be g x g");
  for (const auto& row : tau_)
    if (static_cast<int>(row.size()) != g)
      throw std::invalid_argument("SiegelPoint: tau must be g x g");
  tau.assign(g, std::vector<Complex>(g, 0.0));
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) tau[i][j] = 0.5 * (tau_[i][j] + tau_[j][i]);
  if (!cholesky_ok(im()))
    throw NotPositiveDefinite("SiegelPoint: Im(tau) is not positive definite");
}

RealMatrix SiegelPoint::im() const {
  RealMatrix y(g, std::vector<double>(g, 0.0));
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) y[i][j] = tau[i][j].imag();
  return y;
}

IntSymplectic::IntSymplectic(int g_, IntMatrix a, IntMatrix b, IntMatrix c,
                             IntMatrix d)
    : g(g_), A(std::move(a)), B(std::move(b)), C(std::move(c)), D(std::move(d)) {
  if (g < 1) throw std::invalid_argument("IntSymplectic: genus must be positive");
  for (const IntMatrix* blk : {&A, &B, &C, &D}) {
    if (static_cast<int>(blk->size()) != g)
      throw std::invalid_argument("IntSymplectic: blocks must be g x g");
    for (const auto& row : *blk)
      if (static_cast<int>(row.size()) != g)
        throw std::invalid_argument("IntSymplectic: blocks must be g x g");
  }
  // M^T J M = J in exact arithmetic, checked entrywise in 128-bit products.
  const int n = 2 * g;
  auto entry = [&](int i, int j) -> int64_t {
    if (i < g) return j < g ? A[i][j] : B[i][j - g];
    return j < g ? C[i - g][j] : D[i - g][j - g];
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      __int128 s = 0;
      for (int k = 0; k < g; ++k)
        s += static_cast<__int128>(entry(k, i)) * entry(g + k, j) -
             static_cast<__int128>(entry(g + k, i)) * entry(k, j);
      const __int128 want = (j == i + g) ? 1 : (i == j + g ? -1 : 0);
      if (s != want)
        throw std::invalid_argument("IntSymplectic: matrix is not symplectic");
    }
}

IntSymplectic IntSymplectic::identity(int g) {
  return IntSymplectic(g, int_identity(g), int_zero(g), int_zero(g),
                       int_identity(g));
}

IntSymplectic IntSymplectic::operator*(const IntSymplectic& rhs) const {
  if (g != rhs.g)
    throw std::invalid_argument("IntSymplectic: genus mismatch in product");
  return IntSymplectic(g, int_add(int_mul(A, rhs.A), int_mul(B, rhs.C)),
                       int_add(int_mul(A, rhs.B), int_mul(B, rhs.D)),
                       int_add(int_mul(C, rhs.A), int_mul(D, rhs.C)),
                       int_add(int_mul(C, rhs.B), int_mul(D, rhs.D)));
}

Z4Matrix IntSymplectic::mod4() const {
  const int n = 2 * g;
  Z4Matrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int64_t e = (i < g) ? (j < g ? A[i][j] : B[i][j - g])
                                : (j < g ? C[i - g][j] : D[i - g][j - g]);
      m.set(i, j, static_cast<int>(((e % 4) + 4) % 4));
    }
  return m;
}

bool is_theta_group_int(const IntSymplectic& m) {
  for (int i = 0; i < m.g; ++i) {
    int64_t ab = 0, cd = 0;
    for (int k = 0; k < m.g; ++k) {
      ab += m.A[i][k] * m.B[i][k];
      cd += m.C[i][k] * m.D[i][k];
    }
    if ((ab & 1) || (cd & 1)) return false;
  }
  return true;
}

SiegelPoint mobius_act(const IntSymplectic& m, const SiegelPoint& tau) {
  if (m.g != tau.g)
    throw std::invalid_argument("mobius_act: genus mismatch");
  const ComplexMatrix num = affine_block(m.A, m.B, tau.tau);
  const ComplexMatrix den = affine_block(m.C, m.D, tau.tau);
  // R = num * den^{-1}  <=>  den^T R^T = num^T.
  const int gg = tau.g;
  ComplexMatrix den_t(gg, std::vector<Complex>(gg));
  ComplexMatrix num_t(gg, std::vector<Complex>(gg));
  for (int i = 0; i < gg; ++i)
    for (int j = 0; j < gg; ++j) {
      den_t[i][j] = den[j][i];
      num_t[i][j] = num[j][i];
    }
  const ComplexMatrix rt = solve(std::move(den_t), std::move(num_t));
  ComplexMatrix r(gg, std::vector<Complex>(gg));
  for (int i = 0; i < gg; ++i)
    for (int j = 0; j < gg; ++j) r[i][j] = rt[j][i];
  return SiegelPoint(gg, std::move(r));
}

Complex denominator_det(const IntSymplectic& m, const SiegelPoint& tau) {
  if (m.g != tau.g)
    throw std::invalid_argument("denominator_det: genus mismatch");
  return determinant(affine_block(m.C, m.D, tau.tau));
}

namespace {

// Certified-enough lower bound on the least eigenvalue: the Gershgorin
// bound when positive, otherwise bisection on "Y - mu I admits a Cholesky
// factorization", shrunk by a safety factor.
double min_eigen_lower_bound(const RealMatrix& y) {
  const int n = static_cast<int>(y.size());
  double gersh = 0.0;
  double min_diag = y[0][0];
  for (int i = 0; i < n; ++i) {
    double off = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != i) off += std::abs(y[i][j]);
    const double bound = y[i][i] - off;
    gersh = (i == 0) ? bound : std::min(gersh, bound);
    min_diag = std::min(min_diag, y[i][i]);
  }
  if (gersh > 0.0) return 0.999 * gersh;
  double lo = 0.0, hi = min_diag;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    RealMatrix shifted = y;
    for (int i = 0; i < n; ++i) shifted[i][i] -= mid;
    if (cholesky_ok(shifted))
      lo = mid;
    else
      hi = mid;
  }
  return 0.999 * lo;
}

double tail_bound(int g, double mu, int N) {
  // Terms at sup-norm shell m are bounded in count by (2m+1)^g and in size
  // by e^{-pi mu m^2}; shells beyond N compare against a geometric series.
  const double ratio = std::pow(3.0, g) * std::exp(-kPi * mu * (2.0 * N + 3.0));
  if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
  const double first = std::pow(2.0 * (N + 1) + 1.0, g) *
                       std::exp(-kPi * mu * double(N + 1) * double(N + 1));
  return first / (1.0 - ratio);
}

}  // namespace

int truncation_radius(const RealMatrix& im_tau, double tol) {
  if (tol <= 0.0)
    throw std::invalid_argument("truncation_radius: tol must be positive");
  const int n = static_cast<int>(im_tau.size());
  for (const auto& row : im_tau)
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("truncation_radius: matrix must be square");
  if (!cholesky_ok(im_tau))
    throw NotPositiveDefinite("truncation_radius: Im(tau) is not positive definite");
  const double mu = min_eigen_lower_bound(im_tau);
  if (mu <= 0.0)
    throw NotPositiveDefinite("truncation_radius: eigenvalue bound collapsed");
  for (int N = 0; N <= 100000; ++N)
    if (tail_bound(n, mu, N) < tol) return N;
  throw std::runtime_error("truncation_radius: no radius satisfies the tolerance");
}

Complex theta_partial_sum(const SiegelPoint& tau, int radius) {
  if (radius < 0)
    throw std::invalid_argument("theta_partial_sum: radius must be nonnegative");
  const int g = tau.g;
  std::vector<int> n(g, -radius);
  Complex sum = 0.0;
  while (true) {
    Complex q = 0.0;  // n^T tau n
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j)
        q += double(n[i]) * double(n[j]) * tau.tau[i][j];
    // e^{pi i q} with q = x + iy: magnitude e^{-pi y}, phase pi x.
    sum += std::polar(std::exp(-kPi * q.imag()), kPi * q.real());
    int pos = g - 1;
    while (pos >= 0 && n[pos] == radius) {
      n[pos] = -radius;
      --pos;
    }
    if (pos < 0) break;
    ++n[pos];
  }
  return sum;
}

ThetaValue theta_value(const SiegelPoint& tau, double tol) {
  const RealMatrix y = tau.im();
  const int N = truncation_radius(y, tol);
  const double mu = min_eigen_lower_bound(y);
  const Complex value = theta_partial_sum(tau, N);
  // The analytic tail bound can undershoot double-precision resummation
  // noise; flooring it at a few ulps of the box sum keeps it an honest
  // over-estimate of the discarded tail while staying far below any
  // tolerance the double format can meaningfully request.
  const double box = std::pow(2.0 * N + 1.0, tau.g);
  const double floor_ulps = 24.0 * std::numeric_limits<double>::epsilon() *
                            box * std::max(1.0, std::abs(value));
  return ThetaValue{value, N, std::max(tail_bound(tau.g, mu, N), floor_ulps)};
}

double functional_equation_residual(const IntSymplectic& m,
                                    const SiegelPoint& tau, double tol) {
  if (m.g != tau.g)
    throw std::invalid_argument("functional_equation_residual: genus mismatch");
  if (!is_theta_group_int(m))
    throw NotInThetaGroup(
        "functional_equation_residual: A B^T or C D^T has an odd diagonal entry");
  if (tol < 0.0)
    throw std::invalid_argument("functional_equation_residual: tol must be nonnegative");

  const auto [space, form] = make_standard(m.g, Parity::even);
  const Z4Matrix reduced = m.mod4();
  if (!is_member(space, form, reduced))
    throw ReductionNotMember(
        "functional_equation_residual: mod-4 reduction rejected by the group test");
  const int lam = lambda(space, form, reduced);

  const double eval_tol = std::clamp(tol / 8.0, 1e-12, 1e-10);
  const Complex theta_here = theta_value(tau, eval_tol).value;
  const Complex theta_moved = theta_value(mobius_act(m, tau), eval_tol).value;
  const Complex det = denominator_det(m, tau);
  static const Complex powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

  const Complex lhs = theta_moved * theta_moved;
  const Complex rhs = powers[lam] * det * theta_here * theta_here;
  return std::abs(lhs - rhs) / (std::abs(theta_here * theta_here) * std::abs(det));
}

IntSymplectic random_theta_group_element(int g, int word_length,
                                         uint64_t seed) {
  if (g < 1)
    throw std::invalid_argument("random_theta_group_element: genus must be positive");
  if (word_length < 0 || word_length > 16)
    throw std::invalid_argument(
        "random_theta_group_element: word length must lie in [0, 16]");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_int_distribution<int> small(-2, 2);
  std::uniform_int_distribution<int> signs(0, 1);
  std::uniform_int_distribution<int> index(0, g - 1);

  auto draw_generator = [&]() -> IntSymplectic {
    switch (kind(rng)) {
      case 0: {
        IntMatrix minus = int_zero(g);
        for (int i = 0; i < g; ++i) minus[i][i] = -1;
        return IntSymplectic(g, int_zero(g), minus, int_identity(g),
                             int_zero(g));
      }
      case 1: {
        IntMatrix b = int_zero(g);
        for (int i = 0; i < g; ++i)
          for (int j = i; j < g; ++j) b[i][j] = b[j][i] = small(rng);
        return IntSymplectic(g, int_identity(g), b, int_zero(g),
                             int_identity(g));
      }
      default: {
        // Unimodular U as a few elementary operations; track U^{-T} exactly
        // as the same operations applied to the inverse transpose.
        IntMatrix u = int_identity(g);
        IntMatrix uinv = int_identity(g);
        for (int step = 0; step < 3; ++step) {
          if (g == 1 || signs(rng)) {
            const int i = index(rng);
            for (int j = 0; j < g; ++j) {
              u[i][j] = -u[i][j];
              uinv[j][i] = -uinv[j][i];
            }
          } else {
            int i = index(rng), j = index(rng);
            if (i == j) j = (j + 1) % g;
            const int c = signs(rng) ? 1 : -1;
            for (int k = 0; k < g; ++k) u[i][k] += c * u[j][k];
            for (int k = 0; k < g; ++k) uinv[k][j] -= c * uinv[k][i];
          }
        }
        IntMatrix uinv_t = int_zero(g);
        for (int i = 0; i < g; ++i)
          for (int j = 0; j < g; ++j) uinv_t[i][j] = uinv[j][i];
        return IntSymplectic(g, u, int_zero(g), int_zero(g), uinv_t);
      }
    }
  };

  for (int attempt = 0; attempt < 4096; ++attempt) {
    IntSymplectic m = IntSymplectic::identity(g);
    for (int k = 0; k < word_length; ++k) m = m * draw_generator();
    if (is_theta_group_int(m)) return m;
  }
  throw std::runtime_error(
      "random_theta_group_element: rejection sampling exhausted its retries");
}

SiegelPoint random_siegel_point(int g, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  RealMatrix q(g, std::vector<double>(g));
  for (auto& row : q)
    for (double& e : row) e = unit(rng);
  ComplexMatrix tau(g, std::vector<Complex>(g, 0.0));
  for (int i = 0; i < g; ++i)
    for (int j = i; j < g; ++j) {
      const double x = unit(rng);
      double y = (i == j) ? 0.5 : 0.0;
      for (int k = 0; k < g; ++k) y += q[k][i] * q[k][j];
      tau[i][j] = tau[j][i] = Complex(x, y);
    }
  return SiegelPoint(g, std::move(tau));
}

}  // namespace thetamult

#include "opk/bilanczos.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "opk/errors.hpp"

namespace opk {

namespace {

constexpr double kBiorthLossLimit = 1e-6;
constexpr double kPairingFloor = 1e-8;

}  // namespace

const char* to_string(Termination reason) {
  switch (reason) {
    case Termination::breakdown: return "breakdown";
    case Termination::alignment: return "alignment";
    default: return "max_dim";
  }
}

KrylovData bi_lanczos(const Matrix& superop, const OperatorVector& x0, BiLanczosOptions opts) {
  const int space_dim = x0.dim;
  const Eigen::Index len = x0.data.size();
  if (superop.rows() != len || superop.cols() != len)
    throw std::invalid_argument("superoperator does not act on the seed's space");
  const double d = static_cast<double>(space_dim);
  const double sqrt_d = std::sqrt(d);

  const double seed_norm = x0.data.norm() / sqrt_d;
  if (std::abs(seed_norm - 1.0) > 1e-10)
    throw std::invalid_argument("seed operator is not unit-norm");
  if (opts.tol <= 0.0) throw std::invalid_argument("tolerance must be positive");

  const int max_dim = opts.max_dim > 0 ? opts.max_dim : static_cast<int>(len);
  const Matrix superop_adj = superop.adjoint();

  // Scaled inner product (x|y) = x^dag y / D.
  const auto dot = [d](const Vector& x, const Vector& y) { return x.dot(y) / d; };

  std::vector<Vector> right{x0.data};
  std::vector<Vector> left{x0.data};
  std::vector<Complex> a;
  std::vector<double> b{0.0};
  std::vector<double> c{0.0};

  Termination reason = Termination::max_dim;
  double max_biorth_error = 0.0;
  double b_ref = 1.0;

  for (int n = 0;; ++n) {
    const Vector w = superop * right[static_cast<std::size_t>(n)];
    const Complex a_n = dot(left[static_cast<std::size_t>(n)], w);
    a.push_back(a_n);

    // Candidate next right vector before orthogonalization; alignment with
    // the previous right vector means the operator has stopped growing.
    const double w_norm = w.norm() / sqrt_d;
    const double overlap =
        w_norm > 0.0 ? std::abs(dot(right[static_cast<std::size_t>(n)], w)) / w_norm : 1.0;
    if (overlap > 1.0 - opts.tol) {
      reason = Termination::alignment;
      break;
    }
    if (n + 1 >= max_dim) {
      reason = Termination::max_dim;
      break;
    }

    Vector av = w - a_n * right[static_cast<std::size_t>(n)];
    Vector bv = superop_adj * left[static_cast<std::size_t>(n)] -
                std::conj(a_n) * left[static_cast<std::size_t>(n)];
    if (n >= 1) {
      av -= c[static_cast<std::size_t>(n)] * right[static_cast<std::size_t>(n - 1)];
      bv -= b[static_cast<std::size_t>(n)] * left[static_cast<std::size_t>(n - 1)];
    }

    // Full two-sided re-biorthogonalization, two passes.
    for (int pass = 0; pass < 2; ++pass) {
      for (int k = 0; k <= n; ++k) {
        av -= right[static_cast<std::size_t>(k)] * dot(left[static_cast<std::size_t>(k)], av);
        bv -= left[static_cast<std::size_t>(k)] * dot(right[static_cast<std::size_t>(k)], bv);
      }
    }

    const double b_next = av.norm() / sqrt_d;
    if (n == 0) b_ref = std::max(w_norm, 1.0);
    if (b_next <= opts.tol * b_ref) {
      reason = Termination::breakdown;
      break;
    }
    if (n == 0) b_ref = b_next;  // later steps measure against b_1

    // Pairing degeneracy: once (B|A) stops being positive relative to
    // |A||B| the moment sequence is numerically singular and the
    // remaining directions carry no resolvable weight.  This is where the
    // dissipative chain ends.
    const Complex omega = dot(bv, av);
    const double bv_norm = bv.norm() / sqrt_d;
    if (omega.real() <= kPairingFloor * b_next * bv_norm) {
      reason = Termination::breakdown;
      break;
    }
    // The generator's structure makes (B|A) real; losing that indicates a
    // genuine numerical failure rather than chain exhaustion.
    if (std::abs(omega.imag()) > 1e-6 * std::abs(omega))
      throw NumericalBreakdownError("biorthogonal pairing lost its real structure", n + 1);

    const double c_next = omega.real() / b_next;
    // Normalize the right vector; biorthonormality then fixes the left
    // vector, folding any residual phase of omega into it.
    right.push_back(av / b_next);
    left.push_back(bv * (b_next / std::conj(omega)));
    b.push_back(b_next);
    c.push_back(c_next);

    double worst = 0.0;
    for (int k = 0; k <= n + 1; ++k) {
      const Complex lr = dot(left[static_cast<std::size_t>(k)], right.back());
      const Complex rl = dot(left.back(), right[static_cast<std::size_t>(k)]);
      const double expect = k == n + 1 ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(lr - expect));
      worst = std::max(worst, std::abs(rl - expect));
    }
    max_biorth_error = std::max(max_biorth_error, worst);
    if (worst > kBiorthLossLimit)
      throw NumericalBreakdownError("loss of biorthogonality beyond tolerance", n + 1);
  }

  KrylovData out;
  out.dim = static_cast<int>(a.size());
  out.space_dim = space_dim;
  out.termination_reason = reason;
  out.max_biorth_error = max_biorth_error;
  out.a = Eigen::Map<const Vector>(a.data(), static_cast<Eigen::Index>(a.size()));
  out.b = Eigen::Map<const RealVector>(b.data(), static_cast<Eigen::Index>(out.dim));
  out.c = Eigen::Map<const RealVector>(c.data(), static_cast<Eigen::Index>(out.dim));
  out.right_basis.resize(len, out.dim);
  out.left_basis.resize(len, out.dim);
  for (int k = 0; k < out.dim; ++k) {
    out.right_basis.col(k) = right[static_cast<std::size_t>(k)];
    out.left_basis.col(k) = left[static_cast<std::size_t>(k)];
  }

  Eigen::HouseholderQR<Matrix> qr(out.right_basis);
  out.ortho_basis = qr.householderQ() * Matrix::Identity(len, out.dim);
  out.reduced_generator = out.ortho_basis.adjoint() * superop * out.ortho_basis;
  return out;
}

KrylovData bi_lanczos(const Superoperator& superop, const OperatorVector& x0,
                      BiLanczosOptions opts) {
  if (x0.dim != superop.dim)
    throw std::invalid_argument("seed operator dimension does not match the superoperator");
  return bi_lanczos(superop.matrix, x0, opts);
}

Matrix tridiagonal_matrix(const KrylovData& k) {
  const int m = k.dim;
  Matrix t = Matrix::Zero(m, m);
  for (int n = 0; n < m; ++n) {
    t(n, n) = k.a(n);
    if (n + 1 < m) {
      t(n + 1, n) = k.b(n + 1);  // coefficient of |O_{n+1}) in L|O_n)
      t(n, n + 1) = k.c(n + 1);  // coefficient of |O_n) in L|O_{n+1})
    }
  }
  return t;
}

}  // namespace opk

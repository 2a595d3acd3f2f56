#include "opk/operator_space.hpp"

#include <cmath>
#include <stdexcept>

#include "opk/errors.hpp"

namespace opk {

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

void validate_modes(int n, const std::vector<Matrix>& modes, int dim) {
  const Matrix id = Matrix::Identity(dim, dim);
  for (int i = 0; i < n; ++i) {
    if (modes[static_cast<std::size_t>(i)].rows() != dim ||
        modes[static_cast<std::size_t>(i)].cols() != dim)
      throw std::invalid_argument("majorana mode has wrong dimension");
    const Matrix& psi = modes[static_cast<std::size_t>(i)];
    if ((psi - psi.adjoint()).cwiseAbs().maxCoeff() >= 1e-12)
      throw std::invalid_argument("majorana mode is not Hermitian");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const Matrix& a = modes[static_cast<std::size_t>(i)];
      const Matrix& b = modes[static_cast<std::size_t>(j)];
      const Matrix anti = a * b + b * a - (i == j ? id : Matrix::Zero(dim, dim));
      if (anti.cwiseAbs().maxCoeff() >= 1e-12)
        throw std::invalid_argument("majorana modes violate the anticommutation relation");
    }
  }
}

}  // namespace

MajoranaSet MajoranaSet::jordan_wigner(int n_fermions) {
  if (n_fermions < 2 || n_fermions % 2 != 0)
    throw std::invalid_argument("number of Majorana modes must be even and >= 2");
  if (n_fermions > kMaxFermions)
    throw ResourceLimitError("dense representation limited to N <= " +
                             std::to_string(kMaxFermions) + " Majorana modes");

  const int n_sites = n_fermions / 2;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  Matrix x(2, 2), y(2, 2), z(2, 2), id2 = Matrix::Identity(2, 2);
  x << 0, 1, 1, 0;
  y << 0, Complex(0, -1), Complex(0, 1), 0;
  z << 1, 0, 0, -1;

  std::vector<Matrix> modes;
  modes.reserve(static_cast<std::size_t>(n_fermions));
  for (int site = 0; site < n_sites; ++site) {
    for (const Matrix& head : {x, y}) {
      Matrix m = Matrix::Identity(1, 1);
      for (int s = 0; s < n_sites; ++s) {
        if (s < site)
          m = kron(m, z);
        else if (s == site)
          m = kron(m, head);
        else
          m = kron(m, id2);
      }
      modes.push_back(inv_sqrt2 * m);
    }
  }

  MajoranaSet out(n_fermions, std::move(modes));
  return out;
}

MajoranaSet::MajoranaSet(int n_fermions, std::vector<Matrix> modes)
    : n_(n_fermions), modes_(std::move(modes)) {
  if (n_ < 2 || n_ % 2 != 0)
    throw std::invalid_argument("number of Majorana modes must be even and >= 2");
  if (static_cast<int>(modes_.size()) != n_)
    throw std::invalid_argument("mode count does not match n_fermions");
  dim_ = 1 << (n_ / 2);
  validate_modes(n_, modes_, dim_);
}

OperatorVector vectorize(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("vectorize expects a square matrix");
  const int d = static_cast<int>(a.rows());
  OperatorVector v;
  v.dim = d;
  v.data.resize(static_cast<Eigen::Index>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) v.data(static_cast<Eigen::Index>(i) * d + j) = a(i, j);
  return v;
}

Matrix devectorize(const OperatorVector& v) {
  const int d = v.dim;
  if (v.data.size() != static_cast<Eigen::Index>(d) * d)
    throw std::invalid_argument("operator vector length does not match its dimension");
  Matrix a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = v.data(static_cast<Eigen::Index>(i) * d + j);
  return a;
}

Complex inner_product(const OperatorVector& a, const OperatorVector& b) {
  if (a.dim != b.dim || a.data.size() != b.data.size())
    throw std::invalid_argument("operator vectors have mismatched dimensions");
  return a.data.dot(b.data) / static_cast<double>(a.dim);
}

double operator_norm(const OperatorVector& v) {
  return v.data.norm() / std::sqrt(static_cast<double>(v.dim));
}

double MajoranaString::normalization() const {
  return std::pow(2.0, 0.5 * static_cast<double>(length()));
}

Matrix MajoranaString::matrix(const MajoranaSet& majoranas) const {
  const int d = majoranas.hilbert_dim();
  Matrix m = Matrix::Identity(d, d);
  for (int idx : indices) m = m * majoranas.mode(idx);
  return normalization() * m;
}

StringOperator MajoranaString::symbolic() const {
  return to_operator(StringTerm{indices, Complex(normalization(), 0.0)});
}

std::string MajoranaString::label() const {
  if (indices.empty()) return "identity";
  std::string out;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (k > 0) out += "*";
    out += "psi" + std::to_string(indices[k] + 1);
  }
  return out;
}

Complex hermitian_phase(int length) {
  switch ((length * (length - 1) / 2) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

namespace {

void emit_combinations(int n, int s, std::vector<MajoranaString>& out) {
  std::vector<int> comb(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i) comb[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(MajoranaString{comb});
    int k = s - 1;
    while (k >= 0 && comb[static_cast<std::size_t>(k)] == n - s + k) --k;
    if (k < 0) break;
    ++comb[static_cast<std::size_t>(k)];
    for (int j = k + 1; j < s; ++j)
      comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace

StringBasis::StringBasis(const MajoranaSet& majoranas, StringParity parity)
    : parity_(parity), dim_(majoranas.hilbert_dim()) {
  const int n = majoranas.n_fermions();
  for (int s = 0; s <= n; ++s) {
    const bool odd = s % 2 == 1;
    if (parity == StringParity::odd && !odd) continue;
    if (parity == StringParity::even && odd) continue;
    if (s == 0) {
      elements_.push_back(MajoranaString{{}});
    } else {
      emit_combinations(n, s, elements_);
    }
  }
  vectors_.resize(static_cast<Eigen::Index>(dim_) * dim_, static_cast<Eigen::Index>(elements_.size()));
  for (std::size_t k = 0; k < elements_.size(); ++k)
    vectors_.col(static_cast<Eigen::Index>(k)) = vectorize(elements_[k].matrix(majoranas)).data;
}

std::string StringBasis::label() const {
  switch (parity_) {
    case StringParity::odd: return "string_odd";
    case StringParity::even: return "string_even";
    default: return "string_all";
  }
}

}  // namespace opk

#include "sigmak/symkit.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "sigmak/errors.hpp"

namespace sigmak {

Spectrum::Spectrum(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw DomainError("Spectrum: dimension must be >= 1");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw DomainError("Spectrum: non-finite eigenvalue");
    }
  }
}

SymMatrix::SymMatrix(int dim) : dim_(dim) {
  if (dim < 1) {
    throw DomainError("SymMatrix: dimension must be >= 1");
  }
  data_.assign(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim), 0.0);
}

SymMatrix::SymMatrix(int dim, std::vector<double> row_major) : dim_(dim), data_(std::move(row_major)) {
  if (dim < 1 || data_.size() != static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim)) {
    throw DomainError("SymMatrix: entry count does not match dimension");
  }
  for (int i = 0; i < dim_; ++i) {
    for (int j = i + 1; j < dim_; ++j) {
      if (data_[index(i, j)] != data_[index(j, i)]) {
        throw DomainError("SymMatrix: entries are not symmetric");
      }
    }
  }
}

SymMatrix SymMatrix::identity(int dim) {
  SymMatrix m(dim);
  for (int i = 0; i < dim; ++i) m.set(i, i, 1.0);
  return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> diag) {
  SymMatrix m(static_cast<int>(diag.size()));
  for (int i = 0; i < m.dim(); ++i) m.set(i, i, diag[static_cast<std::size_t>(i)]);
  return m;
}

void SymMatrix::set(int i, int j, double value) {
  data_[index(i, j)] = value;
  data_[index(j, i)] = value;
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double b = 1.0;
  for (int i = 1; i <= k; ++i) {
    b = b * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return std::round(b);
}

double elementary_symmetric(std::span<const double> values, int k) {
  const int n = static_cast<int>(values.size());
  if (k < 0 || k > n) {
    throw DomainError("elementary_symmetric: k=" + std::to_string(k) + " outside [0, " + std::to_string(n) + "]");
  }
  // e[j] after processing a prefix of the values.
  std::vector<double> e(static_cast<std::size_t>(k) + 1, 0.0);
  e[0] = 1.0;
  for (int i = 0; i < n; ++i) {
    const double x = values[static_cast<std::size_t>(i)];
    for (int j = std::min(i + 1, k); j >= 1; --j) {
      e[static_cast<std::size_t>(j)] += x * e[static_cast<std::size_t>(j - 1)];
    }
  }
  return e[static_cast<std::size_t>(k)];
}

double elementary_symmetric(const Spectrum& spec, int k) { return elementary_symmetric(spec.values(), k); }

namespace {

Eigen::MatrixXd to_eigen(const SymMatrix& a) {
  Eigen::MatrixXd m(a.dim(), a.dim());
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < a.dim(); ++j) m(i, j) = a(i, j);
  }
  return m;
}

// Product of two commuting symmetric matrices, symmetrized.
SymMatrix product(const SymMatrix& a, const SymMatrix& b) {
  const int n = a.dim();
  SymMatrix out(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      double ij = 0.0;
      double ji = 0.0;
      for (int l = 0; l < n; ++l) {
        ij += a(i, l) * b(l, j);
        ji += a(j, l) * b(l, i);
      }
      out.set(i, j, 0.5 * (ij + ji));
    }
  }
  return out;
}

}  // namespace

Spectrum eigenvalues(const SymMatrix& a) {
  for (double v : a.row_major()) {
    if (!std::isfinite(v)) throw DomainError("eigenvalues: non-finite matrix entry");
  }
  const Eigen::MatrixXd m = to_eigen(a);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) {
    throw NumericError("eigenvalues: symmetric eigensolve did not converge");
  }
  const Eigen::VectorXd& lambda = solver.eigenvalues();
  const Eigen::MatrixXd& vecs = solver.eigenvectors();
  const double scale = std::max(1.0, m.norm());
  const double residual = (m * vecs - vecs * lambda.asDiagonal()).colwise().norm().maxCoeff();
  if (!(residual <= 1e-12 * scale)) {
    throw NumericError("eigenvalues: residual " + std::to_string(residual) + " above tolerance");
  }
  return Spectrum(std::vector<double>(lambda.data(), lambda.data() + lambda.size()));
}

double sigma_k_matrix(const SymMatrix& a, int k) {
  if (k < 0 || k > a.dim()) {
    throw DomainError("sigma_k_matrix: k outside [0, n]");
  }
  return elementary_symmetric(eigenvalues(a), k);
}

SymMatrix newton_transform(const SymMatrix& a, int q) {
  const int n = a.dim();
  if (q < 0 || q > n - 1) {
    throw DomainError("newton_transform: q=" + std::to_string(q) + " outside [0, " + std::to_string(n - 1) + "]");
  }
  SymMatrix t = SymMatrix::identity(n);
  for (int p = 1; p <= q; ++p) {
    SymMatrix at = product(a, t);
    const double sigma_p = at.trace() / static_cast<double>(p);
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        t.set(i, j, (i == j ? sigma_p : 0.0) - at(i, j));
      }
    }
  }
  return t;
}

bool gamma_cone_contains(const Spectrum& spec, int k) {
  if (k < 1 || k > spec.dimension()) {
    throw DomainError("gamma_cone_contains: k outside [1, n]");
  }
  for (int j = 1; j <= k; ++j) {
    if (!(elementary_symmetric(spec, j) > 0.0)) return false;
  }
  return true;
}

bool maclaurin_holds(const Spectrum& spec, int k) {
  if (!gamma_cone_contains(spec, k)) {
    throw DomainError("maclaurin_holds: spectrum is not in Gamma_k^+");
  }
  const int n = spec.dimension();
  const double mean = elementary_symmetric(spec, 1) / static_cast<double>(n);
  const double normalized = std::pow(elementary_symmetric(spec, k) / binomial(n, k), 1.0 / static_cast<double>(k));
  return mean + 1e-12 >= normalized;
}

}  // namespace sigmak

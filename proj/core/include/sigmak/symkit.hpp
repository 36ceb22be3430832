#pragma once

// Elementary symmetric functions of small symmetric matrices, Newton
// transformations, and the Garding cone.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace sigmak {

/// Eigenvalue list of an n x n symmetric matrix. Always non-empty and finite.
class Spectrum {
 public:
  explicit Spectrum(std::vector<double> values);
  Spectrum(std::initializer_list<double> values) : Spectrum(std::vector<double>(values)) {}

  [[nodiscard]] int dimension() const { return static_cast<int>(values_.size()); }
  [[nodiscard]] std::span<const double> values() const { return values_; }
  [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
};

/// Dense symmetric matrix; storage is kept exactly symmetric.
class SymMatrix {
 public:
  explicit SymMatrix(int dim);
  /// Row-major entries; throws DomainError unless entries[i][j] == entries[j][i].
  SymMatrix(int dim, std::vector<double> row_major);

  static SymMatrix identity(int dim);
  static SymMatrix diagonal(std::span<const double> diag);

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] double operator()(int i, int j) const { return data_[index(i, j)]; }
  /// Writes (i, j) and (j, i).
  void set(int i, int j, double value);
  [[nodiscard]] double trace() const;
  [[nodiscard]] std::span<const double> row_major() const { return data_; }

 private:
  [[nodiscard]] std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(j);
  }

  int dim_;
  std::vector<double> data_;
};

/// sigma_k of a list of reals; sigma_0 = 1. Throws DomainError unless 0 <= k <= size.
double elementary_symmetric(std::span<const double> values, int k);
double elementary_symmetric(const Spectrum& spec, int k);

/// Symmetric eigensolve. Throws NumericError if the residual |Av - lambda v|
/// exceeds 1e-12 (relative to max(1, |A|)).
Spectrum eigenvalues(const SymMatrix& a);

double sigma_k_matrix(const SymMatrix& a, int k);

/// q-th Newton transformation T_q(A), via T_0 = I, T_q = sigma_q(A) I - A T_{q-1}
/// with sigma_q(A) = tr(A T_{q-1}) / q. Requires 0 <= q <= n-1.
SymMatrix newton_transform(const SymMatrix& a, int q);

/// Gamma_k^+ membership: sigma_j(lambda) > 0 for every j = 1..k (strict, no tolerance).
bool gamma_cone_contains(const Spectrum& spec, int k);

/// sigma_1/n + 1e-12 >= (sigma_k / C(n,k))^(1/k). Throws DomainError outside Gamma_k^+.
bool maclaurin_holds(const Spectrum& spec, int k);

/// Binomial coefficient C(n, k) as a double; zero when k < 0 or k > n.
double binomial(int n, int k);

}  // namespace sigmak

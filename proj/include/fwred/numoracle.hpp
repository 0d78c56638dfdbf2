#pragma once

#include "fwred/engine.hpp"
#include "fwred/expression.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace fwred::num {

using Real = long double;
using Complex = std::complex<Real>;
using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

struct AssignmentParams {
  Real m1 = 1;
  Real m2 = 2;
  int aux_dim = 2;
  std::uint64_t seed = 0;
};

/// Concrete graded matrices for every symbol of a table.
///
/// The space is D1 (x) A1 (x) D2 (x) A2 with 4-dimensional Dirac factors D1, D2
/// and auxiliary factors of size aux_dim. A2 is trivial unless the table
/// declares commuting pairs; then each pair is realized exactly by letting one
/// symbol act on D1 (x) A1 and the other on D2 (x) A2.
class MatrixAssignment {
 public:
  static MatrixAssignment random(const TablePtr& table, const AssignmentParams& params);

  [[nodiscard]] const TablePtr& table_ptr() const { return table_; }
  [[nodiscard]] const AssignmentParams& params() const { return params_; }
  [[nodiscard]] Eigen::Index dim() const { return beta1_.size(); }
  /// Diagonal of beta_1 or beta_2.
  [[nodiscard]] const Eigen::Matrix<Real, Eigen::Dynamic, 1>& beta(int particle) const {
    return particle == 1 ? beta1_ : beta2_;
  }
  [[nodiscard]] const Matrix& symbol(SymbolId id) const { return symbols_.at(id); }
  /// Replaces one symbol matrix (tests build hand-made assignments this way).
  void set_symbol(SymbolId id, Matrix m) { symbols_.at(id) = std::move(m); }

 private:
  TablePtr table_;
  AssignmentParams params_;
  Eigen::Matrix<Real, Eigen::Dynamic, 1> beta1_;
  Eigen::Matrix<Real, Eigen::Dynamic, 1> beta2_;
  std::vector<Matrix> symbols_;
};

/// Keeps the entries of `m` allowed by `sector` with respect to the diagonal
/// gradings b1, b2: (1/4)(M +- b1 M b1 +- b2 M b2 +- b1 b2 M b1 b2).
Matrix project_sector(const Matrix& m, Parity sector, const Eigen::Matrix<Real, Eigen::Dynamic, 1>& b1,
                      const Eigen::Matrix<Real, Eigen::Dynamic, 1>& b2);

/// Random Hermitian matrix of size 16 * aux_dim in the given sector, scaled
/// to unit Frobenius norm. The grading is that of an assignment over a table
/// without commuting pairs.
Matrix random_sector_matrix(Parity sector, int aux_dim, std::uint64_t seed);

/// Evaluates expressions at a numeric c, caching c-independent word products.
/// A symbol of intrinsic order k contributes its matrix times c^k.
class Evaluator {
 public:
  explicit Evaluator(const MatrixAssignment& asg) : asg_(&asg) {}

  Matrix operator()(const Expression& a, Real c);
  [[nodiscard]] const MatrixAssignment& assignment() const { return *asg_; }

 private:
  const Matrix& word_matrix(const Word& w);

  const MatrixAssignment* asg_;
  std::map<Word, Matrix> cache_;
};

Matrix evaluate(const Expression& a, const MatrixAssignment& asg, Real c);

/// U = exp(i S_n) ... exp(i S_1) for the trace generators.
Matrix trace_unitary(const ReductionTrace& trace, Evaluator& ev, Real c);

/// ||U H U^+ - H_tr||_F / ||H||_F with H_tr = trace.hamiltonian.
Real exact_conjugation_residual(const Expression& H, const ReductionTrace& trace, const MatrixAssignment& asg,
                                Real c);

struct ScalingReport {
  std::vector<Real> c_values;
  /// Relative residuals as returned by exact_conjugation_residual.
  std::vector<Real> residuals;
  /// Residuals times ||H||_F; the slope is fitted to these.
  std::vector<Real> absolute;
  /// Number of leading points used by the fit.
  std::size_t fitted = 0;
  bool saturated = false;
  Real slope = 0;
};

/// Relative residual below which a point counts as round-off saturated.
inline constexpr Real kSaturationFloor = 1e-17L;

/// Least-squares slope of log(absolute residual) against log(c) over the
/// unsaturated prefix of the sweep.
ScalingReport order_scaling_slope(const Expression& H, const ReductionTrace& trace, const MatrixAssignment& base,
                                  const std::vector<Real>& c_values);

/// Least-squares slope of y against x.
Real fit_slope(const std::vector<Real>& x, const std::vector<Real>& y);

}  // namespace fwred::num

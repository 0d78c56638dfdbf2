#include "fwred/numoracle.hpp"

#include "fwred/error.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <queue>
#include <random>

namespace fwred::num {

namespace {

using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

constexpr int kDirac = 4;

Vec dirac_beta() {
  Vec b(kDirac);
  b << 1, 1, -1, -1;
  return b;
}

Vec kron_vec(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Matrix random_hermitian(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  }
  return (g + g.adjoint()) / Real(2);
}

Matrix unit_norm(Matrix m) {
  const Real n = m.norm();
  if (n > 0) m /= n;
  return m;
}

// 0 = acts on the whole space, 1 = D1 (x) A1 only, 2 = D2 (x) A2 only.
std::vector<int> assign_sides(const SymbolTable& table) {
  const std::size_t n = table.size();
  std::vector<std::vector<SymbolId>> adj(n);
  for (const auto& [a, b] : table.relations()) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> side(n, 0);
  std::vector<int> color(n, -1);
  for (SymbolId start = 0; start < n; ++start) {
    if (color[start] != -1 || adj[start].empty()) continue;
    std::vector<SymbolId> component;
    std::queue<SymbolId> todo;
    todo.push(start);
    color[start] = 0;
    while (!todo.empty()) {
      const SymbolId s = todo.front();
      todo.pop();
      component.push_back(s);
      for (SymbolId t : adj[s]) {
        if (color[t] == -1) {
          color[t] = 1 - color[s];
          todo.push(t);
        } else if (color[t] == color[s]) {
          throw EvaluationError("commuting pairs around '" + table.decl(s).name +
                                "' are not bipartite; no tensor realization");
        }
      }
    }
    auto fits = [&](int flip) {
      for (SymbolId s : component) {
        const Parity p = table.decl(s).parity;
        if ((color[s] ^ flip) == 0 ? p.odd2 : p.odd1) return false;
      }
      return true;
    };
    const int flip = fits(0) ? 0 : fits(1) ? 1 : -1;
    if (flip < 0) {
      throw EvaluationError("commuting pairs around '" + table.decl(start).name +
                            "' cannot be split between the two particles");
    }
    for (SymbolId s : component) side[s] = 1 + (color[s] ^ flip);
  }
  return side;
}

}  // namespace

Matrix project_sector(const Matrix& m, Parity sector, const Vec& b1, const Vec& b2) {
  const Real s1 = sector.odd1 ? -1 : 1;
  const Real s2 = sector.odd2 ? -1 : 1;
  Matrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const Real w = (1 + s1 * b1(i) * b1(j)) * (1 + s2 * b2(i) * b2(j)) / 4;
      out(i, j) = w * m(i, j);
    }
  }
  return out;
}

Matrix random_sector_matrix(Parity sector, int aux_dim, std::uint64_t seed) {
  if (aux_dim < 1) throw UsageError("aux_dim must be positive");
  std::mt19937_64 rng(seed);
  const Vec ones_d = Vec::Ones(kDirac);
  const Vec ones_a = Vec::Ones(aux_dim);
  // Same D1 (x) A (x) D2 layout as an assignment over a table without relations.
  const Vec b1 = kron_vec(kron_vec(dirac_beta(), ones_a), ones_d);
  const Vec b2 = kron_vec(kron_vec(ones_d, ones_a), dirac_beta());
  Matrix x = project_sector(random_hermitian(b1.size(), rng), sector, b1, b2);
  return unit_norm((x + x.adjoint()) / Real(2));
}

MatrixAssignment MatrixAssignment::random(const TablePtr& table, const AssignmentParams& params) {
  if (params.aux_dim < 1) throw UsageError("aux_dim must be positive");
  if (!(params.m1 > 0) || !(params.m2 > 0)) throw UsageError("masses must be positive");
  MatrixAssignment asg;
  asg.table_ = table;
  asg.params_ = params;

  const std::vector<int> side = assign_sides(*table);
  const Eigen::Index n_a1 = params.aux_dim;
  const Eigen::Index n_a2 = table->relations().empty() ? 1 : params.aux_dim;
  const Vec beta = dirac_beta();
  const Vec half1_beta = kron_vec(beta, Vec::Ones(n_a1));
  const Vec half2_beta = kron_vec(beta, Vec::Ones(n_a2));
  const Vec half1_ones = Vec::Ones(kDirac * n_a1);
  const Vec half2_ones = Vec::Ones(kDirac * n_a2);
  asg.beta1_ = kron_vec(half1_beta, half2_ones);
  asg.beta2_ = kron_vec(half1_ones, half2_beta);

  std::mt19937_64 rng(params.seed);
  for (SymbolId id = 0; id < table->size(); ++id) {
    const Parity p = table->decl(id).parity;
    Matrix x;
    switch (side[id]) {
      case 1: {
        const Matrix a = project_sector(random_hermitian(half1_ones.size(), rng), p, half1_beta, half1_ones);
        x = Eigen::kroneckerProduct(a, Matrix::Identity(half2_ones.size(), half2_ones.size())).eval();
        break;
      }
      case 2: {
        const Matrix b = project_sector(random_hermitian(half2_ones.size(), rng), p, half2_ones, half2_beta);
        x = Eigen::kroneckerProduct(Matrix::Identity(half1_ones.size(), half1_ones.size()), b).eval();
        break;
      }
      default:
        x = project_sector(random_hermitian(asg.beta1_.size(), rng), p, asg.beta1_, asg.beta2_);
        break;
    }
    asg.symbols_.push_back(unit_norm((x + x.adjoint()) / Real(2)));
  }
  return asg;
}

const Matrix& Evaluator::word_matrix(const Word& w) {
  if (auto it = cache_.find(w); it != cache_.end()) return it->second;
  Matrix m;
  if (w.empty()) {
    m = Matrix::Identity(asg_->dim(), asg_->dim());
  } else {
    const Word prefix(w.begin(), w.end() - 1);
    m = word_matrix(prefix) * asg_->symbol(w.back());
  }
  return cache_.emplace(w, std::move(m)).first->second;
}

Matrix Evaluator::operator()(const Expression& a, Real c) {
  if (a.table_ptr() != asg_->table_ptr() && !(a.table() == *asg_->table_ptr())) {
    throw UsageError("expression and matrix assignment use different symbol tables");
  }
  const Real m1 = asg_->params().m1;
  const Real m2 = asg_->params().m2;
  const Eigen::Index n = asg_->dim();
  Matrix out = Matrix::Zero(n, n);
  for (const auto& [key, coeff] : a.terms()) {
    for (const MassFraction* f : {&coeff.re, &coeff.im}) {
      if (!f->is_zero() && f->den().evaluate(m1, m2) == Real(0)) {
        throw EvaluationError("coefficient denominator " + f->den().to_string() + " vanishes at m1 = " +
                              std::to_string(static_cast<double>(m1)) +
                              ", m2 = " + std::to_string(static_cast<double>(m2)));
      }
    }
    const Complex scale = coeff.evaluate(m1, m2) * std::pow(c, static_cast<Real>(a.effective_order(key)));
    const Matrix& w = word_matrix(key.word);
    if (key.b1 == 0 && key.b2 == 0) {
      out += scale * w;
      continue;
    }
    Vec rows = Vec::Ones(n);
    if (key.b1 != 0) rows = rows.cwiseProduct(asg_->beta(1));
    if (key.b2 != 0) rows = rows.cwiseProduct(asg_->beta(2));
    out += (rows.cast<Complex>() * scale).asDiagonal() * w;
  }
  return out;
}

Matrix evaluate(const Expression& a, const MatrixAssignment& asg, Real c) {
  Evaluator ev(asg);
  return ev(a, c);
}

Matrix trace_unitary(const ReductionTrace& trace, Evaluator& ev, Real c) {
  const Eigen::Index n = ev.assignment().dim();
  Matrix u = Matrix::Identity(n, n);
  for (const auto& step : trace.steps) u = (Complex(0, 1) * ev(step.generator, c)).exp() * u;
  const Real defect = (u.adjoint() * u - Matrix::Identity(n, n)).norm();
  if (defect > 1e-10L) {
    throw NumericalError("trace unitary deviates from unitarity by " + std::to_string(static_cast<double>(defect)));
  }
  return u;
}

namespace {

Real residual_with(const Expression& H, const ReductionTrace& trace, Evaluator& ev, Real c, Real* h_norm) {
  const Matrix h = ev(H, c);
  const Matrix u = trace_unitary(trace, ev, c);
  const Matrix r = u * h * u.adjoint() - ev(trace.hamiltonian, c);
  const Real nh = h.norm();
  if (h_norm != nullptr) *h_norm = nh;
  if (nh == 0) throw NumericalError("Hamiltonian evaluates to zero");
  return r.norm() / nh;
}

}  // namespace

Real exact_conjugation_residual(const Expression& H, const ReductionTrace& trace, const MatrixAssignment& asg,
                                Real c) {
  Evaluator ev(asg);
  return residual_with(H, trace, ev, c, nullptr);
}

Real fit_slope(const std::vector<Real>& x, const std::vector<Real>& y) {
  const auto n = static_cast<Real>(x.size());
  Real sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sx += x[k];
    sy += y[k];
    sxx += x[k] * x[k];
    sxy += x[k] * y[k];
  }
  const Real den = n * sxx - sx * sx;
  if (den == 0) throw NumericalError("slope fit needs at least two distinct abscissae");
  return (n * sxy - sx * sy) / den;
}

ScalingReport order_scaling_slope(const Expression& H, const ReductionTrace& trace, const MatrixAssignment& base,
                                  const std::vector<Real>& c_values) {
  if (c_values.size() < 4) throw UsageError("the scaling sweep needs at least 4 values of c");
  for (std::size_t k = 1; k < c_values.size(); ++k) {
    if (!(c_values[k] > c_values[k - 1])) throw UsageError("c values must be strictly increasing");
  }
  ScalingReport rep;
  rep.c_values = c_values;
  Evaluator ev(base);
  for (Real c : c_values) {
    Real h_norm = 0;
    const Real rel = residual_with(H, trace, ev, c, &h_norm);
    rep.residuals.push_back(rel);
    rep.absolute.push_back(rel * h_norm);
  }
  while (rep.fitted < c_values.size() && rep.residuals[rep.fitted] >= kSaturationFloor) ++rep.fitted;
  rep.saturated = rep.fitted < c_values.size();
  if (rep.fitted < 3) {
    throw NumericalError("residual saturates after " + std::to_string(rep.fitted) + " points of the sweep");
  }
  std::vector<Real> lx, ly;
  for (std::size_t k = 0; k < rep.fitted; ++k) {
    lx.push_back(std::log(c_values[k]));
    ly.push_back(std::log(rep.absolute[k]));
  }
  rep.slope = fit_slope(lx, ly);
  return rep;
}

}  // namespace fwred::num

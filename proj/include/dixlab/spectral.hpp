#pragma once

// Matrix-scale layer: Schur triangularization, singular values, the
// normal + quasi-nilpotent split, Weyl majorization, and the cutoff trace
// estimators evaluated on finite spectra.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dixlab/weight.hpp"
#include "dixlab/window_series.hpp"

namespace dixlab {

using Complex = std::complex<double>;
using MatrixXcd = Eigen::MatrixXcd;

struct MatrixSpec {
  MatrixXcd entries;

  explicit MatrixSpec(MatrixXcd m) : entries(std::move(m)) {
    if (entries.rows() < 1 || entries.rows() != entries.cols())
      throw std::invalid_argument("MatrixSpec: need square matrix, n >= 1");
    if (!entries.allFinite())
      throw std::invalid_argument("MatrixSpec: non-finite entries");
  }
  Eigen::Index n() const { return entries.rows(); }
};

struct Triangularization {
  MatrixXcd unitary;   // U
  MatrixXcd triangular;  // R, with U R U* = T
  double unitary_residual;  // max deviation of U*U from the identity
};

inline Triangularization triangularize(const MatrixSpec& T) {
  Eigen::ComplexSchur<MatrixXcd> schur(T.entries, /*computeU=*/true);
  if (schur.info() != Eigen::Success)
    throw std::runtime_error("triangularize: Schur iteration did not converge");
  Triangularization out{schur.matrixU(), schur.matrixT(), 0.0};
  MatrixXcd gram = out.unitary.adjoint() * out.unitary;
  gram -= MatrixXcd::Identity(T.n(), T.n());
  out.unitary_residual = gram.cwiseAbs().maxCoeff();
  return out;
}

struct SpectrumData {
  std::vector<Complex> eigenvalues;      // Schur order, multiplicity counted
  std::vector<double> singular_values;   // nonincreasing
  double unitary_residual = 0.0;
};

inline std::vector<double> singular_values(const MatrixSpec& T) {
  Eigen::JacobiSVD<MatrixXcd> svd(T.entries);
  std::vector<double> s(svd.singularValues().data(),
                        svd.singularValues().data() + T.n());
  return s;  // Eigen returns them sorted nonincreasing
}

inline SpectrumData analyze(const MatrixSpec& T) {
  Triangularization tri = triangularize(T);
  SpectrumData spec;
  spec.unitary_residual = tri.unitary_residual;
  spec.eigenvalues.reserve(static_cast<std::size_t>(T.n()));
  for (Eigen::Index i = 0; i < T.n(); ++i)
    spec.eigenvalues.push_back(tri.triangular(i, i));
  spec.singular_values = singular_values(T);
  return spec;
}

inline SpectrumData from_diagonal(std::vector<Complex> diag) {
  SpectrumData spec;
  spec.singular_values.reserve(diag.size());
  for (const Complex& z : diag) spec.singular_values.push_back(std::abs(z));
  std::sort(spec.singular_values.begin(), spec.singular_values.end(),
            std::greater<double>());
  spec.eigenvalues = std::move(diag);
  return spec;
}

struct RingroseSplit {
  MatrixXcd S;      // normal part, same spectrum as T
  MatrixXcd Q;      // quasi-nilpotent part, T = S + Q
  MatrixXcd basis;  // triangularizing unitary
};

inline RingroseSplit ringrose_split(const MatrixSpec& T) {
  Triangularization tri = triangularize(T);
  MatrixXcd diag = tri.triangular.diagonal().asDiagonal();
  MatrixXcd strict = tri.triangular;
  strict.diagonal().setZero();
  RingroseSplit split;
  split.S = tri.unitary * diag * tri.unitary.adjoint();
  split.Q = tri.unitary * strict * tri.unitary.adjoint();
  split.basis = tri.unitary;
  return split;
}

struct WeylReport {
  bool holds = true;
  double max_slack_violation = 0.0;  // worst (sum |lambda| - sum s), any m
};

inline WeylReport weyl_check(const SpectrumData& spec, double slack = 1e-9) {
  std::vector<double> moduli;
  moduli.reserve(spec.eigenvalues.size());
  for (const Complex& z : spec.eigenvalues) moduli.push_back(std::abs(z));
  std::sort(moduli.begin(), moduli.end(), std::greater<double>());
  WeylReport rep;
  double lhs = 0.0, rhs = 0.0;
  for (std::size_t m = 0; m < moduli.size(); ++m) {
    lhs += moduli[m];
    rhs += spec.singular_values[m];
    rep.max_slack_violation = std::max(rep.max_slack_violation, lhs - rhs);
  }
  rep.holds = rep.max_slack_violation <= slack;
  return rep;
}

// Sum of eigenvalues with |lambda| strictly above the cutoff.
inline Complex eigen_cutoff_sum(const SpectrumData& spec, double cutoff) {
  if (cutoff < 0.0) throw std::invalid_argument("eigen_cutoff_sum: cutoff < 0");
  Complex sum = 0.0;
  for (const Complex& z : spec.eigenvalues)
    if (std::abs(z) > cutoff) sum += z;
  return sum;
}

// The four estimator series of the cutoff trace comparison:
//   a(n) = (1/psi(n)) sum_{k<=n} s_k          (positive operators only)
//   b(n) = (1/psi(n)) sum_{|lambda|>psi(n)/n} lambda   (adjusted cutoff)
//   c(n) = (1/psi(n)) sum_{|lambda|>1/n} lambda        (fixed cutoff)
//   d(n) = b-series evaluated on the normal part of the split
// axis_bound(n) = 2 (psi(n)/n) n_{|T|}(psi(n)/n) bounds the discarded
// near-axis terms of the normal-operator reduction.
struct LidskiiComparison {
  std::vector<double> n;
  std::vector<double> a;  // empty unless the operator is positive
  std::vector<Complex> b;
  std::vector<Complex> c;
  std::vector<Complex> d;
  std::vector<double> axis_bound;
  std::vector<double> gap_ab;  // |b - a| (or 0 when a is absent)
  std::vector<double> gap_bd;
};

namespace detail {

inline bool is_positive_semidefinite(const SpectrumData& spec, double floor) {
  for (const Complex& z : spec.eigenvalues)
    if (std::abs(z.imag()) > 1e-10 * (1.0 + std::abs(z)) || z.real() < floor)
      return false;
  return true;
}

inline LidskiiComparison compare_spectra(const SpectrumData& spec,
                                         const SpectrumData& normal_part,
                                         const WeightFunction& psi,
                                         const std::vector<double>& n_grid) {
  LidskiiComparison rep;
  double top = spec.singular_values.empty() ? 0.0 : spec.singular_values[0];
  bool positive = is_positive_semidefinite(spec, -1e-10 * top);
  for (double n : n_grid) {
    if (!(n >= 1.0)) throw std::invalid_argument("compare_spectra: n < 1");
    double psi_n = std::exp(psi.eval_log(std::log(n)));
    double cut_adj = psi_n / n;
    rep.n.push_back(n);
    if (positive) {
      double sum = 0.0;
      std::size_t m = std::min(spec.singular_values.size(),
                               static_cast<std::size_t>(n));
      for (std::size_t k = 0; k < m; ++k) sum += spec.singular_values[k];
      rep.a.push_back(sum / psi_n);
    }
    Complex b = eigen_cutoff_sum(spec, cut_adj);
    Complex c = eigen_cutoff_sum(spec, 1.0 / n);
    Complex d = eigen_cutoff_sum(normal_part, cut_adj);
    rep.b.push_back(b / psi_n);
    rep.c.push_back(c / psi_n);
    rep.d.push_back(d / psi_n);
    std::size_t count = 0;
    for (double s : spec.singular_values)
      if (s > cut_adj) ++count;
    rep.axis_bound.push_back(2.0 * cut_adj * static_cast<double>(count));
    rep.gap_ab.push_back(positive ? std::abs(rep.b.back() - rep.a.back()) : 0.0);
    rep.gap_bd.push_back(std::abs(rep.b.back() - rep.d.back()));
  }
  return rep;
}

}  // namespace detail

inline LidskiiComparison trace_estimate_compare(const MatrixSpec& T,
                                                const WeightFunction& psi,
                                                const std::vector<double>& n_grid) {
  SpectrumData spec = analyze(T);
  RingroseSplit split = ringrose_split(T);
  SpectrumData normal = analyze(MatrixSpec(split.S));
  return detail::compare_spectra(spec, normal, psi, n_grid);
}

// Spectrum-level entry point for operators given by their diagonal (the
// normal part coincides with the operator itself).
inline LidskiiComparison trace_estimate_compare(const SpectrumData& spec,
                                                const WeightFunction& psi,
                                                const std::vector<double>& n_grid) {
  return detail::compare_spectra(spec, spec, psi, n_grid);
}

// H(t) = (alpha/Gamma(1/alpha)) (1/t) sum_lambda exp(-(t lambda)^{-alpha})
// over a real nonnegative spectrum; zero eigenvalues contribute nothing.
inline WindowSeries heat_kernel_spectrum(const std::vector<double>& eigenvalues,
                                         double alpha,
                                         const std::vector<double>& u_grid) {
  if (!(alpha > 0.0)) throw std::invalid_argument("heat_kernel_spectrum: alpha <= 0");
  double factor = alpha / std::tgamma(1.0 / alpha);
  WindowSeries s;
  s.meta = "heat_kernel_spectrum(alpha=" + std::to_string(alpha) + ")";
  s.u = u_grid;
  for (double u : u_grid) {
    double sum = 0.0;
    for (double lam : eigenvalues) {
      if (!(lam > 0.0)) continue;
      double expo = -std::exp(-alpha * (u + std::log(lam)));
      if (std::isinf(expo)) continue;
      sum += std::exp(expo);
    }
    s.value.push_back(factor * std::exp(-u) * sum);
  }
  return s;
}

inline WindowSeries heat_kernel_matrix(const MatrixSpec& T, double alpha,
                                       const std::vector<double>& u_grid) {
  double scale = T.entries.cwiseAbs().maxCoeff();
  if ((T.entries - T.entries.adjoint()).cwiseAbs().maxCoeff() >
      1e-10 * (1.0 + scale))
    throw std::invalid_argument("heat_kernel_matrix: matrix not Hermitian");
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(T.entries);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("heat_kernel_matrix: eigensolver failed");
  std::vector<double> eigs(es.eigenvalues().data(),
                           es.eigenvalues().data() + T.n());
  for (double& e : eigs) {
    if (e < -1e-10 * scale)
      throw std::invalid_argument("heat_kernel_matrix: matrix not positive");
    e = std::max(e, 0.0);
  }
  return heat_kernel_spectrum(eigs, alpha, u_grid);
}

}  // namespace dixlab

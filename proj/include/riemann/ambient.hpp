#pragma once

#include "riemann/core.hpp"

#include <cmath>
#include <optional>

namespace riemann {

// ---------------------------------------------------------------------------
// Operator fields and embedded ambient structures.
//
// An embedded ambient structure is a manifold M inside a Euclidean space E
// together with a positive-definite metric operator g(x) on E and the
// associated tangent projection P(x). Everything downstream (Christoffel
// functions, curvature, bundles, Jacobi fields) is assembled from these two
// operator fields and their directional derivatives.
// ---------------------------------------------------------------------------

// Per-point linear operator on the ambient space, materialized as a dense
// matrix. dir_deriv, when set, is the analytic directional derivative
// (x, xi) -> (D_xi F)_x as a dense matrix; otherwise finite differences are
// used. Formulas registered here must remain evaluable slightly off manifold
// so that finite differencing through them is meaningful.
struct OperatorField {
  std::function<Mat(const Vec&)> evaluate;
  std::function<Mat(const Vec&, const Vec&)> dir_deriv;
};

using BilinearClosure = std::function<Vec(const Vec& x, const Vec& w1, const Vec& w2)>;
using TrilinearClosure =
    std::function<Vec(const Vec& x, const Vec& dir, const Vec& w1, const Vec& w2)>;

struct EmbeddedStructure {
  AmbientSpace space;
  OperatorField metric;      // g
  OperatorField projection;  // P_g
  // Optional analytic closures. christoffel must be valid for an ambient
  // second argument (and bilinear in both); d_christoffel is the frozen-
  // argument directional derivative (x, dir, w1, w2) -> (D_dir Gamma)(w1, w2).
  BilinearClosure christoffel;
  TrilinearClosure d_christoffel;
  BilinearClosure x_raiser;  // X with <X(xi,eta), phi> = <(D_phi g) xi, eta>
  BilinearClosure gamma_e;   // ambient-connection Christoffel form, for Gauss-Codazzi
  std::function<double(const Vec&)> membership;  // manifold-specific residual
  bool metric_is_constant = false;
  double on_manifold_tol = 1e-8;
  double fd_step = 1e-5;
};

// Build a dense operator matrix column by column from an apply closure.
inline Mat operator_from_apply(int dim, const std::function<Vec(const Vec&)>& apply) {
  Mat m(dim, dim);
  Vec e = Vec::Zero(dim);
  for (int j = 0; j < dim; ++j) {
    e[j] = 1.0;
    m.col(j) = apply(e);
    e[j] = 0.0;
  }
  return m;
}

inline Mat materialize(const OperatorField& field, const Vec& x) {
  if (!field.evaluate) throw IncompleteStructure("operator field has no evaluator");
  return field.evaluate(x);
}

// Directional derivative of an operator field: analytic closure when present,
// otherwise the central difference (F(x+h xi) - F(x-h xi)) / 2h with
// h = fd_step (1+|x|)/(1+|xi|).
inline Mat dir_deriv_operator(const OperatorField& field, const Vec& x, const Vec& xi,
                              double fd_step = 1e-5) {
  if (field.dir_deriv) return field.dir_deriv(x, xi);
  if (!field.evaluate) throw IncompleteStructure("operator field has no evaluator");
  const double h = fd_step * (1.0 + x.norm()) / (1.0 + xi.norm());
  const Mat fp = field.evaluate(x + h * xi);
  const Mat fm = field.evaluate(x - h * xi);
  if (!all_finite(fp) || !all_finite(fm))
    throw OffManifold("operator field not evaluable at displaced point");
  return (fp - fm) / (2.0 * h);
}

// ---------------------------------------------------------------------------
// Projections from spans. P = N (N^T g N)^{-1} N^T g for an injective map N
// whose columns span the target subspace.
// ---------------------------------------------------------------------------

inline Mat projection_from_span(const Mat& n_map, const Mat& g) {
  if (n_map.rows() != g.rows()) throw InvalidInput("projection_from_span: shape mismatch");
  const Mat gram = n_map.transpose() * g * n_map;
  Eigen::FullPivLU<Mat> lu(gram);
  const double rcond = lu.rcond();
  if (!lu.isInvertible() || rcond < 1e-12)
    throw SingularSpan("projection_from_span: N^T g N numerically singular");
  return n_map * lu.solve(n_map.transpose() * g);
}

// ---------------------------------------------------------------------------
// Elementary structure queries.
// ---------------------------------------------------------------------------

inline Vec project(const EmbeddedStructure& s, const Vec& x, const Vec& w) {
  return materialize(s.projection, x) * w;
}

inline double metric_inner(const EmbeddedStructure& s, const Vec& x, const Vec& w1,
                           const Vec& w2) {
  if (w1.size() != s.space.dim || w2.size() != s.space.dim)
    throw InvalidInput("metric_inner: dimension mismatch");
  return w1.dot(materialize(s.metric, x) * w2);
}

inline double tangency_residual(const EmbeddedStructure& s, const Vec& x, const Vec& w) {
  return (project(s, x, w) - w).norm();
}

inline bool is_tangent(const EmbeddedStructure& s, const Vec& x, const Vec& w) {
  return tangency_residual(s, x, w) <= s.on_manifold_tol * (1.0 + w.norm());
}

// The commuting extension p_xi(y) = P_y xi of a tangent vector.
inline Vec p_field(const EmbeddedStructure& s, const Vec& xi, const Vec& y) {
  return project(s, y, xi);
}

// Orthonormal basis of the tangent space at x, extracted from the range of
// the projection by column-pivoted QR.
inline Mat tangent_basis(const EmbeddedStructure& s, const Vec& x) {
  const Mat p = materialize(s.projection, x);
  Eigen::ColPivHouseholderQR<Mat> qr(p);
  const int dim = s.space.dim;
  const Mat r = qr.matrixR();
  const double pivot0 = std::abs(r(0, 0));
  if (pivot0 < 1e-14) throw DegenerateTangentSpace("tangent space has rank zero");
  int rank = 0;
  for (int i = 0; i < std::min<int>(dim, dim); ++i) {
    if (std::abs(r(i, i)) > 1e-8 * pivot0) ++rank;
  }
  if (rank == 0) throw DegenerateTangentSpace("tangent basis extraction failed");
  const Mat q = qr.householderQ();
  return q.leftCols(rank);
}

// ---------------------------------------------------------------------------
// Index-raised metric-derivative term X and the Christoffel assembly.
// ---------------------------------------------------------------------------

// Generic X: materialize an orthonormal tangent basis {b_i}, form the
// covector c_i = <(D_{b_i} g) xi, eta> and return sum_i c_i b_i. Only
// P g^{-1} X is consumed downstream, so the normal component is set to zero.
inline Vec x_raiser_generic(const EmbeddedStructure& s, const Vec& x, const Vec& xi,
                            const Vec& eta) {
  const Mat basis = tangent_basis(s, x);
  Vec out = Vec::Zero(s.space.dim);
  for (int i = 0; i < basis.cols(); ++i) {
    const Mat dg = dir_deriv_operator(s.metric, x, basis.col(i), s.fd_step);
    out += (dg * xi).dot(eta) * basis.col(i);
  }
  return out;
}

namespace detail {

// Tensor part of the Levi-Civita correction on a tangent pair:
//   ring(xi, eta) = 1/2 P g^{-1} ((D_xi g) eta + (D_eta g) xi - X(xi, eta)).
inline Vec gamma_ring_tangent(const EmbeddedStructure& s, const Vec& x, const Vec& xi,
                              const Vec& eta) {
  if (s.metric_is_constant) return Vec::Zero(s.space.dim);
  const Mat dg_xi = dir_deriv_operator(s.metric, x, xi, s.fd_step);
  const Mat dg_eta = dir_deriv_operator(s.metric, x, eta, s.fd_step);
  const Vec xr = s.x_raiser ? s.x_raiser(x, xi, eta) : x_raiser_generic(s, x, xi, eta);
  const Vec rhs = dg_xi * eta + dg_eta * xi - xr;
  const Mat g = materialize(s.metric, x);
  Eigen::LLT<Mat> llt(g);
  if (llt.info() != Eigen::Success) throw InvalidMetric("metric operator not positive definite");
  return 0.5 * (materialize(s.projection, x) * llt.solve(rhs));
}

}  // namespace detail

// Christoffel function evaluated at x. Delegates to the registered analytic
// closure when present; otherwise assembles
//   Gamma(w1, w2) = -(D_{P w1} P) w2 + ring(P w1, P w2)
// which is bilinear in both slots, smooth in x for frozen arguments, and
// restricts to the Levi-Civita Christoffel function on tangent pairs.
inline Vec christoffel(const EmbeddedStructure& s, const Vec& x, const Vec& w1,
                       const Vec& w2) {
  if (w1.size() != s.space.dim || w2.size() != s.space.dim)
    throw InvalidInput("christoffel: dimension mismatch");
  if (s.christoffel) return s.christoffel(x, w1, w2);
  if (!s.projection.evaluate) throw IncompleteStructure("christoffel: no projection field");
  if (!s.metric_is_constant && !s.metric.evaluate)
    throw IncompleteStructure("christoffel: non-constant metric requires a metric field");
  const Vec xi = project(s, x, w1);
  const Mat dp = dir_deriv_operator(s.projection, x, xi, s.fd_step);
  Vec out = -(dp * w2);
  if (!s.metric_is_constant)
    out += detail::gamma_ring_tangent(s, x, xi, project(s, x, w2));
  return out;
}

// Gamma-ring on a tangent pair: (D_xi P) eta + Gamma(xi, eta), which equals
// P Gamma(xi, eta) and vanishes for constant metric operators.
inline Vec gamma_ring(const EmbeddedStructure& s, const Vec& x, const Vec& xi,
                      const Vec& eta) {
  const Mat dp = dir_deriv_operator(s.projection, x, xi, s.fd_step);
  return dp * eta + christoffel(s, x, xi, eta);
}

// Frozen-argument directional derivative of the Christoffel field,
// (D_dir Gamma)(w1, w2) at x. Analytic closure when registered; otherwise a
// central difference through the field. `step` <= 0 selects a default that is
// looser when the field itself is finite-difference assembled.
inline Vec d_christoffel(const EmbeddedStructure& s, const Vec& x, const Vec& dir,
                         const Vec& w1, const Vec& w2, double step = 0.0) {
  if (s.d_christoffel) return s.d_christoffel(x, dir, w1, w2);
  double h = step;
  if (h <= 0.0) {
    const bool analytic_pieces =
        static_cast<bool>(s.christoffel) ||
        (static_cast<bool>(s.projection.dir_deriv) &&
         (s.metric_is_constant || static_cast<bool>(s.metric.dir_deriv)));
    h = analytic_pieces ? 1e-5 : 1e-4;
  }
  h *= (1.0 + x.norm()) / (1.0 + dir.norm());
  const Vec gp = christoffel(s, x + h * dir, w1, w2);
  const Vec gm = christoffel(s, x - h * dir, w1, w2);
  return (gp - gm) / (2.0 * h);
}

// ---------------------------------------------------------------------------
// Standard extension of a tangent-space metric to an ambient metric operator:
//   g = (I - P^E) + g_R P^E
// where P^E is the Euclidean projection and g_R is symmetric positive
// definite on the tangent space.
// ---------------------------------------------------------------------------

inline OperatorField standard_metric_extension(const OperatorField& euclid_projection,
                                               const std::function<Mat(const Vec&)>& g_r) {
  OperatorField g;
  g.evaluate = [euclid_projection, g_r](const Vec& x) -> Mat {
    const Mat pe = euclid_projection.evaluate(x);
    const Mat gr = g_r(x);
    const Mat sym_defect = pe.transpose() * (gr - gr.transpose()) * pe;
    if (sym_defect.norm() > 1e-10 * (1.0 + gr.norm()))
      throw InvalidMetric("standard_metric_extension: g_R not symmetric on tangent space");
    const int n = static_cast<int>(pe.rows());
    return Mat::Identity(n, n) - pe + gr * pe;
  };
  return g;
}

// ---------------------------------------------------------------------------
// Random tangents: ambient standard normal pushed through the projection,
// rejected if degenerate, then normalized.
// ---------------------------------------------------------------------------

inline Vec random_tangent(const EmbeddedStructure& s, Rng& rng, const Vec& x) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Vec t = project(s, x, rng.gaussian_vec(s.space.dim));
    const double norm = t.norm();
    if (norm >= 1e-6) return t / norm;
  }
  throw DegenerateTangentSpace("random_tangent: rejection sampling failed");
}

}  // namespace riemann

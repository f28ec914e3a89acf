#pragma once

#include "riemann/curvature.hpp"

namespace riemann {

// ---------------------------------------------------------------------------
// Submersed ambient structures: an embedded total space together with the
// orthogonal splitting of its tangent bundle into vertical and horizontal
// subbundles. Base-space quantities are never materialized; everything is
// computed on horizontal lifts.
// ---------------------------------------------------------------------------

struct SubmersedStructure {
  EmbeddedStructure total;
  OperatorField vertical;    // ttV
  OperatorField horizontal;  // ttH
  // Optional analytic closures, both valid for an ambient second argument.
  BilinearClosure gamma_h;
  TrilinearClosure d_gamma_h;  // (x, dir, w1, w2) -> (D_dir Gamma^H)(w1, w2)
  // Optional closures for the horizontal-bundle connection operator
  // Gamma^Q(w, v) = Gamma^H(ttH w, v) - B(w, v) and its frozen-argument
  // derivative (x, dir, w, v) -> (D_dir Gamma^Q)(w, v).
  BilinearClosure gamma_q;
  TrilinearClosure d_gamma_q;
  double horizontal_tol = 1e-8;
};

// Derive the vertical projection from a per-point span of the vertical space.
inline OperatorField vertical_from_span(const EmbeddedStructure& total,
                                        const std::function<Mat(const Vec&)>& span) {
  OperatorField f;
  OperatorField metric = total.metric;
  f.evaluate = [metric, span](const Vec& x) -> Mat {
    return projection_from_span(span(x), metric.evaluate(x));
  };
  return f;
}

inline double horizontality_residual(const SubmersedStructure& s, const Vec& x, const Vec& w) {
  return (materialize(s.vertical, x) * w).norm();
}

inline void require_horizontal(const SubmersedStructure& s, const Vec& x, const Vec& w,
                               const char* who) {
  if (horizontality_residual(s, x, w) > s.horizontal_tol * (1.0 + w.norm()))
    throw NonHorizontal(std::string(who) + ": input vector is not horizontal");
}

inline Vec random_horizontal(const SubmersedStructure& s, Rng& rng, const Vec& x) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Vec t = materialize(s.horizontal, x) * rng.gaussian_vec(s.total.space.dim);
    const double norm = t.norm();
    if (norm >= 1e-6) return t / norm;
  }
  throw DegenerateTangentSpace("random_horizontal: rejection sampling failed");
}

inline Vec random_vertical(const SubmersedStructure& s, Rng& rng, const Vec& x) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Vec t = materialize(s.vertical, x) * rng.gaussian_vec(s.total.space.dim);
    const double norm = t.norm();
    if (norm >= 1e-6) return t / norm;
  }
  throw DegenerateTangentSpace("random_vertical: rejection sampling failed");
}

// ---------------------------------------------------------------------------
// Horizontal Christoffel function. The assembled form
//   Gamma^H(xi, w) = -(D_xi ttH) w + ttH [ (D_xi P) w + Gamma(xi, w) ]
// is valid for an ambient second argument, which is what the curvature
// assembly requires; simplified horizontal-only shortcuts must not be used
// there.
// ---------------------------------------------------------------------------

inline Vec gamma_h(const SubmersedStructure& s, const Vec& x, const Vec& xi, const Vec& w) {
  require_horizontal(s, x, xi, "gamma_h");
  if (s.gamma_h) return s.gamma_h(x, xi, w);
  const Mat dh = dir_deriv_operator(s.horizontal, x, xi, s.total.fd_step);
  const Mat dp = dir_deriv_operator(s.total.projection, x, xi, s.total.fd_step);
  const Mat tth = materialize(s.horizontal, x);
  return -(dh * w) + tth * (dp * w + christoffel(s.total, x, xi, w));
}

namespace detail {

// Field form without the horizontality guard, for frozen-argument
// differentiation through the structure.
inline Vec gamma_h_field(const SubmersedStructure& s, const Vec& x, const Vec& w1,
                         const Vec& w2) {
  if (s.gamma_h) return s.gamma_h(x, w1, w2);
  const Mat dh = dir_deriv_operator(s.horizontal, x, w1, s.total.fd_step);
  const Mat dp = dir_deriv_operator(s.total.projection, x, w1, s.total.fd_step);
  const Mat tth = materialize(s.horizontal, x);
  return -(dh * w2) + tth * (dp * w2 + christoffel(s.total, x, w1, w2));
}

inline double default_h_step(const SubmersedStructure& s) {
  const bool analytic = static_cast<bool>(s.gamma_h) ||
                        (static_cast<bool>(s.horizontal.dir_deriv) &&
                         static_cast<bool>(s.total.projection.dir_deriv) &&
                         (s.total.metric_is_constant || static_cast<bool>(s.total.metric.dir_deriv)));
  return analytic ? 1e-5 : 1e-4;
}

inline Vec d_gamma_h(const SubmersedStructure& s, const Vec& x, const Vec& dir,
                     const Vec& w1, const Vec& w2, double step) {
  if (s.d_gamma_h) return s.d_gamma_h(x, dir, w1, w2);
  double h = (step > 0.0) ? step : default_h_step(s);
  h *= (1.0 + x.norm()) / (1.0 + dir.norm());
  return (gamma_h_field(s, x + h * dir, w1, w2) - gamma_h_field(s, x - h * dir, w1, w2)) /
         (2.0 * h);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// The integrability tensor A of the splitting and its metric adjoint:
//   A_xi eta       = -(D_xi ttV) ttH eta + ttV ring(xi, ttH eta)
//   A^dagger_xi w  =  (D_xi ttH) ttV w  - ttH ring(xi, ttV w)
// For horizontal pairs, 2 A_xi eta = (D_xi ttH) eta - (D_eta ttH) xi, which
// serves as an independent evaluation route.
// ---------------------------------------------------------------------------

inline Vec oneill_a(const SubmersedStructure& s, const Vec& x, const Vec& xi, const Vec& eta) {
  const Vec eta_h = materialize(s.horizontal, x) * eta;
  const Mat dv = dir_deriv_operator(s.vertical, x, xi, s.total.fd_step);
  Vec out = -(dv * eta_h);
  if (!s.total.metric_is_constant)
    out += materialize(s.vertical, x) * gamma_ring(s.total, x, project(s.total, x, xi), eta_h);
  return out;
}

inline Vec oneill_a_dagger(const SubmersedStructure& s, const Vec& x, const Vec& xi,
                           const Vec& w) {
  const Vec w_v = materialize(s.vertical, x) * w;
  const Mat dh = dir_deriv_operator(s.horizontal, x, xi, s.total.fd_step);
  Vec out = dh * w_v;
  if (!s.total.metric_is_constant)
    out -= materialize(s.horizontal, x) * gamma_ring(s.total, x, project(s.total, x, xi), w_v);
  return out;
}

inline Vec oneill_a_via_bracket(const SubmersedStructure& s, const Vec& x, const Vec& xi,
                                const Vec& eta) {
  require_horizontal(s, x, xi, "oneill_a_via_bracket");
  require_horizontal(s, x, eta, "oneill_a_via_bracket");
  const Mat dh_xi = dir_deriv_operator(s.horizontal, x, xi, s.total.fd_step);
  const Mat dh_eta = dir_deriv_operator(s.horizontal, x, eta, s.total.fd_step);
  return 0.5 * (dh_xi * eta - dh_eta * xi);
}

// ---------------------------------------------------------------------------
// Lifted curvature of the base. Three evaluation paths that must agree:
// the direct horizontal-Christoffel assembly, its gamma-ring variant, and
// the classical (1,3) splitting through the total-space curvature.
// ---------------------------------------------------------------------------

enum class SubmersedCurvaturePath { direct, ring, total_split };

struct SubmersedCurvatureOptions {
  SubmersedCurvaturePath path = SubmersedCurvaturePath::direct;
  CurvatureOptions total_opts = {};  // used by total_split
  double d_gamma_step = 0.0;
};

namespace detail {

inline Vec curvature_submersed_ungated(const SubmersedStructure& s, const Vec& x,
                                       const Vec& xi, const Vec& eta, const Vec& phi,
                                       const SubmersedCurvatureOptions& opts);

}  // namespace detail

inline Vec curvature_submersed(const SubmersedStructure& s, const Vec& x, const Vec& xi,
                               const Vec& eta, const Vec& phi,
                               const SubmersedCurvatureOptions& opts = {}) {
  require_horizontal(s, x, xi, "curvature_submersed");
  require_horizontal(s, x, eta, "curvature_submersed");
  require_horizontal(s, x, phi, "curvature_submersed");
  return detail::curvature_submersed_ungated(s, x, xi, eta, phi, opts);
}

inline Vec detail::curvature_submersed_ungated(const SubmersedStructure& s, const Vec& x,
                                               const Vec& xi, const Vec& eta, const Vec& phi,
                                               const SubmersedCurvatureOptions& opts) {
  const Vec a_xi_eta = oneill_a(s, x, xi, eta);
  switch (opts.path) {
    case SubmersedCurvaturePath::direct: {
      const Vec t1 = detail::d_gamma_h(s, x, xi, eta, phi, opts.d_gamma_step);
      const Vec t2 = detail::d_gamma_h(s, x, eta, xi, phi, opts.d_gamma_step);
      const Vec t3 = detail::gamma_h_field(s, x, xi, detail::gamma_h_field(s, x, eta, phi));
      const Vec t4 = detail::gamma_h_field(s, x, eta, detail::gamma_h_field(s, x, xi, phi));
      return 2.0 * oneill_a_dagger(s, x, phi, a_xi_eta) - t1 + t2 - t3 + t4;
    }
    case SubmersedCurvaturePath::ring: {
      // Differentiates y -> ttH_y ring_y(w1, w2) with frozen ambient
      // arguments in place of the Gamma^H derivative.
      auto ring_field = [&s](const Vec& y, const Vec& w1, const Vec& w2) -> Vec {
        return materialize(s.horizontal, y) * detail::gamma_ring_field(s.total, y, w1, w2);
      };
      double h = (opts.d_gamma_step > 0.0) ? opts.d_gamma_step : detail::default_h_step(s);
      const double hx = h * (1.0 + x.norm()) / (1.0 + xi.norm());
      const double he = h * (1.0 + x.norm()) / (1.0 + eta.norm());
      const Vec t1 = (ring_field(x + hx * xi, eta, phi) - ring_field(x - hx * xi, eta, phi)) /
                     (2.0 * hx);
      const Vec t2 = (ring_field(x + he * eta, xi, phi) - ring_field(x - he * eta, xi, phi)) /
                     (2.0 * he);
      const Vec t3 = detail::gamma_h_field(s, x, xi, detail::gamma_h_field(s, x, eta, phi));
      const Vec t4 = detail::gamma_h_field(s, x, eta, detail::gamma_h_field(s, x, xi, phi));
      return 2.0 * oneill_a_dagger(s, x, phi, a_xi_eta) - t1 + t2 - t3 + t4;
    }
    case SubmersedCurvaturePath::total_split: {
      const Vec rm = curvature_embedded(s.total, x, xi, eta, phi, opts.total_opts);
      return materialize(s.horizontal, x) * rm + 2.0 * oneill_a_dagger(s, x, phi, a_xi_eta) -
             oneill_a_dagger(s, x, xi, oneill_a(s, x, eta, phi)) +
             oneill_a_dagger(s, x, eta, oneill_a(s, x, xi, phi));
    }
  }
  throw InvalidInput("curvature_submersed: unknown path");
}

inline double sectional_numerator_submersed(const SubmersedStructure& s, const Vec& x,
                                            const Vec& xi, const Vec& eta,
                                            const SubmersedCurvatureOptions& opts = {}) {
  const Vec r = curvature_submersed(s, x, xi, eta, xi, opts);
  return r.dot(materialize(s.total.metric, x) * eta);
}

}  // namespace riemann

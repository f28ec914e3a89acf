#pragma once

#include "riemann/ambient.hpp"

namespace riemann {

// ---------------------------------------------------------------------------
// Riemannian curvature of embedded structures from a Christoffel function.
// Three algebraically equivalent assemblies are provided; their numerical
// agreement is itself a correctness check. The sign convention is the one
// produced by these formulas: on the unit sphere R_{xi,eta}phi =
// <xi,phi> eta - <eta,phi> xi, so sectional curvature pairs as
// <R_{xi,eta} xi, g eta> > 0.
// ---------------------------------------------------------------------------

enum class CurvatureVariant { rc1, rc1a, rc2 };

struct CurvatureOptions {
  CurvatureVariant variant = CurvatureVariant::rc1;
  double d_gamma_step = 0.0;  // <= 0: pick per structure
};

namespace detail {

// Frozen-argument gamma-ring field (D_{w1} P)_x w2 + Gamma_x(w1, w2): the
// form whose x-derivative enters the rc2 assembly. The derivative direction
// in the projection term is the frozen ambient vector w1 itself.
inline Vec gamma_ring_field(const EmbeddedStructure& s, const Vec& x, const Vec& w1,
                            const Vec& w2) {
  const Mat dp = dir_deriv_operator(s.projection, x, w1, s.fd_step);
  return dp * w2 + christoffel(s, x, w1, w2);
}

inline Vec d_gamma_ring(const EmbeddedStructure& s, const Vec& x, const Vec& dir,
                        const Vec& w1, const Vec& w2, double step) {
  double h = step;
  if (h <= 0.0) {
    const bool analytic_pieces =
        static_cast<bool>(s.christoffel) ||
        (static_cast<bool>(s.projection.dir_deriv) &&
         (s.metric_is_constant || static_cast<bool>(s.metric.dir_deriv)));
    h = analytic_pieces ? 1e-5 : 1e-4;
  }
  h *= (1.0 + x.norm()) / (1.0 + dir.norm());
  const Vec gp = gamma_ring_field(s, x + h * dir, w1, w2);
  const Vec gm = gamma_ring_field(s, x - h * dir, w1, w2);
  return (gp - gm) / (2.0 * h);
}

}  // namespace detail

// R_{xi,eta} phi for three tangent vectors at x.
inline Vec curvature_embedded(const EmbeddedStructure& s, const Vec& x, const Vec& xi,
                              const Vec& eta, const Vec& phi,
                              const CurvatureOptions& opts = {}) {
  if (!s.christoffel && !s.projection.evaluate)
    throw IncompleteStructure("curvature_embedded: no Christoffel data");
  switch (opts.variant) {
    case CurvatureVariant::rc1: {
      const Vec t1 = d_christoffel(s, x, xi, eta, phi, opts.d_gamma_step);
      const Vec t2 = d_christoffel(s, x, eta, xi, phi, opts.d_gamma_step);
      const Vec t3 = christoffel(s, x, xi, christoffel(s, x, eta, phi));
      const Vec t4 = christoffel(s, x, eta, christoffel(s, x, xi, phi));
      return -t1 + t2 - t3 + t4;
    }
    case CurvatureVariant::rc1a: {
      // The swapped-argument form is derived with the Christoffel extension
      // that projects both slots, Gamma_P(w1, w2) = Gamma(P w1, P w2); that
      // same field must be the one differentiated, so the registered
      // derivative closure (which belongs to the unprojected field) is not
      // used here.
      auto proj_field = [&s](const Vec& y, const Vec& w1, const Vec& w2) -> Vec {
        const Mat p = materialize(s.projection, y);
        return christoffel(s, y, p * w1, p * w2);
      };
      double h = opts.d_gamma_step;
      if (h <= 0.0) {
        const bool analytic_pieces =
            static_cast<bool>(s.christoffel) ||
            (static_cast<bool>(s.projection.dir_deriv) &&
             (s.metric_is_constant || static_cast<bool>(s.metric.dir_deriv)));
        h = analytic_pieces ? 1e-5 : 1e-4;
      }
      const double hx = h * (1.0 + x.norm()) / (1.0 + xi.norm());
      const double he = h * (1.0 + x.norm()) / (1.0 + eta.norm());
      const Vec t1 =
          (proj_field(x + hx * xi, eta, phi) - proj_field(x - hx * xi, eta, phi)) /
          (2.0 * hx);
      const Vec t2 =
          (proj_field(x + he * eta, xi, phi) - proj_field(x - he * eta, xi, phi)) /
          (2.0 * he);
      const Vec t3 = proj_field(x, proj_field(x, phi, eta), xi);
      const Vec t4 = proj_field(x, proj_field(x, phi, xi), eta);
      return -t1 + t2 - t3 + t4;
    }
    case CurvatureVariant::rc2: {
      const Vec t1 = detail::d_gamma_ring(s, x, xi, eta, phi, opts.d_gamma_step);
      const Vec t2 = detail::d_gamma_ring(s, x, eta, xi, phi, opts.d_gamma_step);
      const Vec t3 = christoffel(s, x, xi, christoffel(s, x, eta, phi));
      const Vec t4 = christoffel(s, x, eta, christoffel(s, x, xi, phi));
      return -t1 + t2 - t3 + t4;
    }
  }
  throw InvalidInput("curvature_embedded: unknown variant");
}

// <R_{xi,eta} xi, g eta>; nonnegative for the catalog's positively curved
// spaces, and equal to K (|xi|^2 |eta|^2 - <xi,eta>^2) in the metric at x.
inline double sectional_numerator(const EmbeddedStructure& s, const Vec& x, const Vec& xi,
                                  const Vec& eta, const CurvatureOptions& opts = {}) {
  const Vec r = curvature_embedded(s, x, xi, eta, xi, opts);
  return r.dot(materialize(s.metric, x) * eta);
}

// ---------------------------------------------------------------------------
// Second fundamental form against an ambient connection Gamma^E, and the
// Gauss-Codazzi residual. Two(xi,eta) = Gamma^E(xi,eta) - Gamma(xi,eta) is
// normal-valued and symmetric; its metric adjoint is
// Two^dagger(xi, w) = (D_xi P)(I-P) w - P Gamma^E(xi, (I-P) w).
// ---------------------------------------------------------------------------

inline Vec second_fundamental(const EmbeddedStructure& s, const Vec& x, const Vec& xi,
                              const Vec& eta) {
  if (!s.gamma_e) throw IncompleteStructure("second_fundamental: Gamma^E not registered");
  return s.gamma_e(x, xi, eta) - christoffel(s, x, xi, eta);
}

inline Vec second_fundamental_adjoint(const EmbeddedStructure& s, const Vec& x,
                                      const Vec& xi, const Vec& w) {
  if (!s.gamma_e) throw IncompleteStructure("second_fundamental_adjoint: Gamma^E not registered");
  const Mat p = materialize(s.projection, x);
  const Vec normal = w - p * w;
  const Mat dp = dir_deriv_operator(s.projection, x, xi, s.fd_step);
  return dp * normal - p * s.gamma_e(x, xi, normal);
}

// Curvature of the ambient connection Gamma^E, same assembly as rc1.
inline Vec curvature_ambient_connection(const EmbeddedStructure& s, const Vec& x,
                                        const Vec& xi, const Vec& eta, const Vec& phi,
                                        double step = 1e-5) {
  if (!s.gamma_e) throw IncompleteStructure("curvature_ambient_connection: Gamma^E not registered");
  auto d_gamma_e = [&](const Vec& dir, const Vec& w1, const Vec& w2) -> Vec {
    const double h = step * (1.0 + x.norm()) / (1.0 + dir.norm());
    return (s.gamma_e(x + h * dir, w1, w2) - s.gamma_e(x - h * dir, w1, w2)) / (2.0 * h);
  };
  return -d_gamma_e(xi, eta, phi) + d_gamma_e(eta, xi, phi) -
         s.gamma_e(x, xi, s.gamma_e(x, eta, phi)) +
         s.gamma_e(x, eta, s.gamma_e(x, xi, phi));
}

struct GaussCodazziReport {
  Vec lhs;         // R^M
  Vec rhs;         // P R^E + Two^dagger(eta, Two(xi,phi)) - Two^dagger(xi, Two(eta,phi))
  double residual; // max-norm difference
};

inline GaussCodazziReport gauss_codazzi_check(const EmbeddedStructure& s, const Vec& x,
                                              const Vec& xi, const Vec& eta, const Vec& phi,
                                              const CurvatureOptions& opts = {}) {
  const Vec lhs = curvature_embedded(s, x, xi, eta, phi, opts);
  const Mat p = materialize(s.projection, x);
  const Vec re = curvature_ambient_connection(s, x, xi, eta, phi);
  const Vec rhs = p * re + second_fundamental_adjoint(s, x, eta, second_fundamental(s, x, xi, phi)) -
                  second_fundamental_adjoint(s, x, xi, second_fundamental(s, x, eta, phi));
  return {lhs, rhs, (lhs - rhs).cwiseAbs().maxCoeff()};
}

}  // namespace riemann

#pragma once

#include "riemann/submersion.hpp"

namespace riemann {

// ---------------------------------------------------------------------------
// Double tangent bundle of an embedded structure, and the tangent structure
// of the horizontal bundle of a submersion. Elements are quadruples
// (x, v, dm, dt) of ambient vectors.
// ---------------------------------------------------------------------------

struct DoubleTangent {
  Vec x, v, dm, dt;
};

struct MembershipReport {
  double fiber;       // |P v - v|  (or |ttH v - v|)
  double base_dir;    // |P dm - dm|
  double fiber_dir;   // |(D_dm P) v + P dt - dt|  (or the ttH analogue)
  bool pass = false;
  double max() const { return std::max(fiber, std::max(base_dir, fiber_dir)); }
};

// Membership in T T M: P v = v, P dm = dm, (D_dm P) v + P dt = dt.
inline MembershipReport is_double_tangent(const EmbeddedStructure& s, const DoubleTangent& q,
                                          double tol = 0.0) {
  const double t = (tol > 0.0) ? tol : s.on_manifold_tol;
  const Mat p = materialize(s.projection, q.x);
  const Mat dp = dir_deriv_operator(s.projection, q.x, q.dm, s.fd_step);
  MembershipReport r;
  r.fiber = (p * q.v - q.v).norm();
  r.base_dir = (p * q.dm - q.dm).norm();
  r.fiber_dir = (dp * q.v + p * q.dt - q.dt).norm();
  r.pass = r.max() <= t * (1.0 + q.v.norm() + q.dm.norm() + q.dt.norm());
  return r;
}

// Connection map C(dm, dt) = dt + Gamma(dm, v), tangent at x.
inline Vec connection_map(const EmbeddedStructure& s, const DoubleTangent& q) {
  return q.dt + christoffel(s, q.x, q.dm, q.v);
}

// Inverse leg of the bijection (dm, dt) <-> (dm, C): dt = dc - Gamma(v, dm).
inline Vec connection_map_inverse(const EmbeddedStructure& s, const Vec& x, const Vec& v,
                                  const Vec& dm, const Vec& dc) {
  return dc - christoffel(s, x, v, dm);
}

inline DoubleTangent canonical_flip(const DoubleTangent& q) {
  return {q.x, q.dm, q.v, q.dt};
}

// Sample an exact element of T T M over (x, v): draw tangent dm and dc and
// run the inverse connection map.
inline DoubleTangent random_double_tangent(const EmbeddedStructure& s, Rng& rng,
                                           const Vec& x, const Vec& v) {
  const Vec dm = random_tangent(s, rng, x);
  const Vec dc = random_tangent(s, rng, x);
  return {x, v, dm, connection_map_inverse(s, x, v, dm, dc)};
}

// ---------------------------------------------------------------------------
// Tangent structure of the horizontal bundle H M. T H M elements satisfy
//   P dm = dm,  (D_dm ttH) v + ttH dt = dt        (with ttH v = v),
// and the sub-bundle Q H M additionally has ttH dm = dm.
// ---------------------------------------------------------------------------

inline MembershipReport is_tangent_hm(const SubmersedStructure& s, const DoubleTangent& q,
                                      double tol = 0.0) {
  const double t = (tol > 0.0) ? tol : s.total.on_manifold_tol;
  const Mat tth = materialize(s.horizontal, q.x);
  const Mat p = materialize(s.total.projection, q.x);
  const Mat dh = dir_deriv_operator(s.horizontal, q.x, q.dm, s.total.fd_step);
  MembershipReport r;
  r.fiber = (tth * q.v - q.v).norm();
  r.base_dir = (p * q.dm - q.dm).norm();
  r.fiber_dir = (dh * q.v + tth * q.dt - q.dt).norm();
  r.pass = r.max() <= t * (1.0 + q.v.norm() + q.dm.norm() + q.dt.norm());
  return r;
}

inline MembershipReport is_qhm(const SubmersedStructure& s, const DoubleTangent& q,
                               double tol = 0.0) {
  const double t = (tol > 0.0) ? tol : s.total.on_manifold_tol;
  MembershipReport r = is_tangent_hm(s, q, tol);
  const Mat tth = materialize(s.horizontal, q.x);
  r.base_dir = std::max(r.base_dir, (tth * q.dm - q.dm).norm());
  r.pass = r.max() <= t * (1.0 + q.v.norm() + q.dm.norm() + q.dt.norm());
  return r;
}

// Fiber-direction component attached to a vertical base direction eps so that
// (x, v, eps, B_v eps) is tangent to H M and projects to a zero tangent vector
// of the base tangent bundle: B_v eps = (D_eps ttH) v - (D_v ttH) eps.
inline Vec b_map_fiber(const SubmersedStructure& s, const Vec& x, const Vec& v,
                       const Vec& eps) {
  const Mat dh_eps = dir_deriv_operator(s.horizontal, x, eps, s.total.fd_step);
  const Mat dh_v = dir_deriv_operator(s.horizontal, x, v, s.total.fd_step);
  return dh_eps * v - dh_v * eps;
}

inline DoubleTangent b_map(const SubmersedStructure& s, const Vec& x, const Vec& v,
                           const Vec& eps) {
  if ((materialize(s.vertical, x) * eps - eps).norm() >
      s.total.on_manifold_tol * (1.0 + eps.norm()))
    throw NonHorizontal("b_map: base direction is not vertical");
  require_horizontal(s, x, v, "b_map");
  return {x, v, eps, b_map_fiber(s, x, v, eps)};
}

// Extension of the B operator to an ambient first argument:
// B(w, v) = (D_{ttV w} ttH) v - (D_v ttH) ttV w. Vanishes on horizontal w.
inline Vec b_operator(const SubmersedStructure& s, const Vec& x, const Vec& w, const Vec& v) {
  const Vec wv = materialize(s.vertical, x) * w;
  return b_map_fiber(s, x, v, wv);
}

// Idempotent projection of T H M onto Q H M:
//   ttQ(dm, dt) = (ttH dm, (D_{ttH dm} ttH) v + ttH dt).
inline DoubleTangent ttq_project(const SubmersedStructure& s, const DoubleTangent& h) {
  const Mat tth = materialize(s.horizontal, h.x);
  const Vec dm_h = tth * h.dm;
  const Mat dh = dir_deriv_operator(s.horizontal, h.x, dm_h, s.total.fd_step);
  return {h.x, h.v, dm_h, dh * h.v + tth * h.dt};
}

struct ThmDecomposition {
  DoubleTangent q_part;  // in Q H M
  DoubleTangent v_part;  // in V H M (b_map image)
};

// T H M = Q H M + V H M: the vertical part is (ttV dm, B_v(ttV dm)), the
// Q part the remainder.
inline ThmDecomposition decompose_thm(const SubmersedStructure& s, const DoubleTangent& h) {
  const Mat ttv = materialize(s.vertical, h.x);
  const Vec dm_v = ttv * h.dm;
  const Vec bt = b_map_fiber(s, h.x, h.v, dm_v);
  DoubleTangent v_part{h.x, h.v, dm_v, bt};
  DoubleTangent q_part{h.x, h.v, h.dm - dm_v, h.dt - bt};
  return {q_part, v_part};
}

// Canonical flip twisted to the horizontal bundle:
//   j_H(x, v, dm, dt) = (x, ttH dm, v, (D_v ttH) dm + ttH dt),
// which lands in Q H M and is an involution there.
inline DoubleTangent horizontal_flip(const SubmersedStructure& s, const DoubleTangent& h) {
  const Mat tth = materialize(s.horizontal, h.x);
  const Mat dh_v = dir_deriv_operator(s.horizontal, h.x, h.v, s.total.fd_step);
  return {h.x, tth * h.dm, h.v, dh_v * h.dm + tth * h.dt};
}

// Connection map on Q H M: C^Q(dm, dt) = dt + Gamma^H(dm, v), horizontal.
inline Vec connection_map_q(const SubmersedStructure& s, const DoubleTangent& q) {
  return q.dt + gamma_h(s, q.x, q.dm, q.v);
}

// Inverse leg: dt = dc - Gamma^H(dm, v). (Gamma^H is not symmetric; this
// argument order is the one that preserves membership.)
inline Vec connection_map_q_inverse(const SubmersedStructure& s, const Vec& x, const Vec& v,
                                    const Vec& dm, const Vec& dc) {
  return dc - gamma_h(s, x, dm, v);
}

inline DoubleTangent random_qhm(const SubmersedStructure& s, Rng& rng, const Vec& x,
                                const Vec& v) {
  const Vec dm = random_horizontal(s, rng, x);
  const Vec dc = random_horizontal(s, rng, x);
  return {x, v, dm, connection_map_q_inverse(s, x, v, dm, dc)};
}

inline DoubleTangent random_thm(const SubmersedStructure& s, Rng& rng, const Vec& x,
                                const Vec& v) {
  DoubleTangent q = random_qhm(s, rng, x, v);
  const Vec eps = random_vertical(s, rng, x);
  const Vec bt = b_map_fiber(s, x, v, eps);
  return {x, v, q.dm + eps, q.dt + bt};
}

}  // namespace riemann

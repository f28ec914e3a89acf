#pragma once

#include "riemann/manifolds.hpp"
#include "riemann/natmetric.hpp"

#include <algorithm>
#include <map>

namespace riemann::checks {

// ---------------------------------------------------------------------------
// Invariant suites over seeded random samples. Each row carries the worst
// residual observed across the samples, the tolerance it is held to, and the
// verdict. Suites only emit rows applicable to the given catalog entry.
// ---------------------------------------------------------------------------

struct CheckRow {
  std::string name;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct SuiteConfig {
  std::uint64_t seed = 0;
  int samples = 20;
  std::map<std::string, double> tol_override;
};

namespace detail {

class Collector {
 public:
  explicit Collector(const SuiteConfig& cfg) : cfg_(cfg) {}

  void add(const std::string& name, double residual, double default_tol) {
    auto it = rows_.find(name);
    if (it == rows_.end()) {
      double tol = default_tol;
      if (auto ov = cfg_.tol_override.find(name); ov != cfg_.tol_override.end())
        tol = ov->second;
      rows_.emplace(name, CheckRow{name, residual, tol, residual <= tol});
    } else {
      it->second.residual = std::max(it->second.residual, residual);
      it->second.pass = it->second.residual <= it->second.tol;
    }
  }

  std::vector<CheckRow> rows() const {
    std::vector<CheckRow> out;
    out.reserve(rows_.size());
    for (const auto& [k, v] : rows_) out.push_back(v);
    return out;  // std::map iteration is already name-sorted
  }

 private:
  SuiteConfig cfg_;
  std::map<std::string, CheckRow> rows_;
};

inline std::vector<int> partition_of(const manifolds::CatalogEntry& e) {
  std::vector<int> part;
  for (int i = 0;; ++i) {
    auto it = e.params.find("d" + std::to_string(i));
    if (it == e.params.end()) break;
    part.push_back(static_cast<int>(it->second));
  }
  return part;
}

}  // namespace detail

inline std::vector<CheckRow> ambient_suite(const manifolds::CatalogEntry& e,
                                           const SuiteConfig& cfg) {
  detail::Collector c(cfg);
  Rng rng(cfg.seed);
  const EmbeddedStructure& s = e.structure;
  for (int k = 0; k < cfg.samples; ++k) {
    const Vec x = e.random_point(rng);
    if (s.membership) c.add("ambient/membership_of_samples", s.membership(x), 1e-10);
    const Mat p = materialize(s.projection, x);
    const Mat g = materialize(s.metric, x);
    c.add("ambient/projection_idempotent", (p * p - p).norm(), 1e-8);
    c.add("ambient/metric_projection_self_adjoint", (g * p - (g * p).transpose()).norm(),
          1e-8);
    Eigen::SelfAdjointEigenSolver<Mat> es(sym(g));
    c.add("ambient/metric_positive_definite", std::max(0.0, -es.eigenvalues().minCoeff()),
          0.0);
    const Vec xi = random_tangent(s, rng, x);
    const Vec eta = random_tangent(s, rng, x);
    const Vec g1 = christoffel(s, x, xi, eta);
    const Vec g2 = christoffel(s, x, eta, xi);
    c.add("ambient/christoffel_symmetric",
          (g1 - g2).norm() / (1.0 + xi.norm() * eta.norm()), 1e-8);
    const Mat d_xi = dir_deriv_operator(s.projection, x, xi, s.fd_step);
    const Mat d_eta = dir_deriv_operator(s.projection, x, eta, s.fd_step);
    c.add("ambient/projection_derivative_symmetric", (d_xi * eta - d_eta * xi).norm(),
          1e-7);
    c.add("ambient/gamma_ring_tangency",
          tangency_residual(s, x, gamma_ring(s, x, xi, eta)), 1e-8);
  }
  // Metric-compatibility probe along a few short geodesics.
  for (int k = 0; k < std::min(cfg.samples, 5); ++k) {
    const Vec x = e.random_point(rng);
    const Vec xi = random_tangent(s, rng, x);
    const Vec eta = random_tangent(s, rng, x);
    GeodesicSpec spec{&s, x, xi, 1.0, 200, e.geodesic_cf};
    auto field = [&](double t) {
      auto [cpt, cv] = geodesic(spec, t);
      (void)cv;
      return std::make_pair(cpt, Vec(project(s, cpt, eta)));
    };
    const double h = 1e-5;
    auto [cp, yp] = field(h);
    auto [cm, ym] = field(-h);
    const double lhs = (yp.dot(materialize(s.metric, cp) * yp) -
                        ym.dot(materialize(s.metric, cm) * ym)) /
                       (2.0 * h);
    const Vec y0 = field(0.0).second;
    const Vec ydot = (yp - ym) / (2.0 * h);
    const Vec nabla = ydot + christoffel(s, x, xi, y0);
    const double rhs = 2.0 * nabla.dot(materialize(s.metric, x) * y0);
    c.add("ambient/metric_compatibility", std::abs(lhs - rhs) / (1.0 + std::abs(lhs)),
          1e-5);
  }
  return c.rows();
}

inline std::vector<CheckRow> curvature_suite(const manifolds::CatalogEntry& e,
                                             const SuiteConfig& cfg) {
  detail::Collector c(cfg);
  Rng rng(cfg.seed + 1);
  const EmbeddedStructure& s = e.structure;
  const int n_var = std::min(cfg.samples, 8);
  for (int k = 0; k < n_var; ++k) {
    const Vec x = e.random_point(rng);
    const Vec xi = random_tangent(s, rng, x);
    const Vec eta = random_tangent(s, rng, x);
    const Vec phi = random_tangent(s, rng, x);
    const Vec r1 = curvature_embedded(s, x, xi, eta, phi, {CurvatureVariant::rc1, 0.0});
    const Vec r1a = curvature_embedded(s, x, xi, eta, phi, {CurvatureVariant::rc1a, 0.0});
    const Vec r2 = curvature_embedded(s, x, xi, eta, phi, {CurvatureVariant::rc2, 0.0});
    c.add("curvature/variant_rc1_rc1a", (r1 - r1a).cwiseAbs().maxCoeff(), 1e-6);
    c.add("curvature/variant_rc1_rc2", (r1 - r2).cwiseAbs().maxCoeff(), 1e-6);
    const Vec r_swap = curvature_embedded(s, x, eta, xi, phi, {CurvatureVariant::rc1, 0.0});
    c.add("curvature/antisymmetry", (r1 + r_swap).norm(), 1e-9);
    const Vec bianchi = r1 + curvature_embedded(s, x, eta, phi, xi) +
                        curvature_embedded(s, x, phi, xi, eta);
    c.add("curvature/first_bianchi", bianchi.norm(), 1e-6);
    const Vec zeta = random_tangent(s, rng, x);
    const Mat g = materialize(s.metric, x);
    const double pair_a = curvature_embedded(s, x, xi, eta, phi).dot(g * zeta);
    const double pair_b = curvature_embedded(s, x, xi, eta, zeta).dot(g * phi);
    c.add("curvature/pair_antisymmetry", std::abs(pair_a + pair_b), 1e-6);
    if (e.curvature_cf)
      c.add("curvature/closed_form", (r1 - e.curvature_cf(x, xi, eta, phi)).cwiseAbs().maxCoeff(),
            1e-8);
    if (s.gamma_e)
      c.add("curvature/gauss_codazzi", gauss_codazzi_check(s, x, xi, eta, phi).residual,
            1e-7);
  }
  return c.rows();
}

inline std::vector<CheckRow> submersion_suite(const manifolds::CatalogEntry& e,
                                              const SuiteConfig& cfg) {
  detail::Collector c(cfg);
  if (!e.submersion) return c.rows();
  Rng rng(cfg.seed + 2);
  const SubmersedStructure& sub = *e.submersion;
  for (int k = 0; k < cfg.samples; ++k) {
    const Vec x = e.random_point(rng);
    const Mat ttv = materialize(sub.vertical, x);
    const Mat tth = materialize(sub.horizontal, x);
    const Mat p = materialize(sub.total.projection, x);
    c.add("submersion/splitting_sum", (ttv + tth - p).norm(), 1e-8);
    c.add("submersion/splitting_orthogonal", (ttv * tth).norm(), 1e-8);
    c.add("submersion/horizontal_idempotent", (tth * tth - tth).norm(), 1e-8);
    const Vec xi = random_horizontal(sub, rng, x);
    const Vec eta = random_horizontal(sub, rng, x);
    const Vec a = oneill_a(sub, x, xi, eta);
    c.add("submersion/oneill_antisymmetric", (a + oneill_a(sub, x, eta, xi)).norm(), 1e-9);
    c.add("submersion/oneill_vertical", (ttv * a - a).norm(), 1e-8);
    c.add("submersion/oneill_bracket_route",
          (a - oneill_a_via_bracket(sub, x, xi, eta)).norm(), 1e-7);
    const Vec w = random_tangent(sub.total, rng, x);
    const Mat g = materialize(sub.total.metric, x);
    const double lhs = oneill_a_dagger(sub, x, xi, w).dot(g * eta);
    const double rhs = w.dot(g * oneill_a(sub, x, xi, eta));
    c.add("submersion/adjoint_pairing", std::abs(lhs - rhs), 1e-7);
  }
  const int n_cur = std::min(cfg.samples, 5);
  for (int k = 0; k < n_cur; ++k) {
    const Vec x = e.random_point(rng);
    const Vec xi = random_horizontal(sub, rng, x);
    const Vec eta = random_horizontal(sub, rng, x);
    const Vec phi = random_horizontal(sub, rng, x);
    const Vec r1 = curvature_submersed(sub, x, xi, eta, phi,
                                       {SubmersedCurvaturePath::direct, {}, 0.0});
    const Vec r2 = curvature_submersed(sub, x, xi, eta, phi,
                                       {SubmersedCurvaturePath::ring, {}, 0.0});
    const Vec r3 = curvature_submersed(sub, x, xi, eta, phi,
                                       {SubmersedCurvaturePath::total_split, {}, 0.0});
    c.add("submersion/curvature_direct_vs_ring", (r1 - r2).cwiseAbs().maxCoeff(), 1e-5);
    c.add("submersion/curvature_direct_vs_split", (r1 - r3).cwiseAbs().maxCoeff(), 1e-5);
    c.add("submersion/curvature_horizontal",
          (materialize(sub.horizontal, x) * r1 - r1).norm(), 1e-8);
    if (e.curvature_h_cf)
      c.add("submersion/curvature_closed_form",
            (r1 - e.curvature_h_cf(x, xi, eta, phi)).cwiseAbs().maxCoeff(), 1e-6);
    if (e.name == "flag") {
      const auto part = detail::partition_of(e);
      const Vec nat = manifolds::flag_curvature_naturally_reductive(
          static_cast<int>(std::round(e.params.at("n"))), part, x, xi, eta, phi);
      c.add("submersion/flag_naturally_reductive_form",
            (e.curvature_h_cf(x, xi, eta, phi) - nat).cwiseAbs().maxCoeff(), 1e-10);
    }
    if (e.name == "grassmann") {
      const double num = sectional_numerator_submersed(sub, x, xi, eta);
      const Mat xm = unvec(static_cast<int>(std::round(e.params.at("n"))),
                           static_cast<int>(std::round(e.params.at("p"))), xi);
      const Mat em = unvec(static_cast<int>(std::round(e.params.at("n"))),
                           static_cast<int>(std::round(e.params.at("p"))), eta);
      const double skew_norms =
          (em.transpose() * xm - xm.transpose() * em).squaredNorm() +
          (xm * em.transpose() - em * xm.transpose()).squaredNorm();
      c.add("submersion/grassmann_sectional_half_skew_norms",
            std::abs(num - 0.5 * skew_norms), 1e-8);
    }
  }
  return c.rows();
}

inline std::vector<CheckRow> bundle_suite(const manifolds::CatalogEntry& e,
                                          const SuiteConfig& cfg) {
  detail::Collector c(cfg);
  Rng rng(cfg.seed + 3);
  const EmbeddedStructure& s = e.structure;
  for (int k = 0; k < cfg.samples; ++k) {
    const Vec x = e.random_point(rng);
    const Vec v = random_tangent(s, rng, x);
    const DoubleTangent q = random_double_tangent(s, rng, x, v);
    c.add("bundles/double_tangent_membership", is_double_tangent(s, q).max(), 1e-8);
    c.add("bundles/canonical_flip_membership", is_double_tangent(s, canonical_flip(q)).max(),
          1e-8);
    const Vec dc = connection_map(s, q);
    const Vec dt_back = connection_map_inverse(s, x, v, q.dm, dc);
    c.add("bundles/connection_round_trip",
          (connection_map(s, {x, v, q.dm, dt_back}) - dc).norm(), 1e-10);
  }
  if (e.submersion) {
    const SubmersedStructure& sub = *e.submersion;
    for (int k = 0; k < cfg.samples; ++k) {
      const Vec x = e.random_point(rng);
      const Vec v = random_horizontal(sub, rng, x);
      const DoubleTangent h = random_thm(sub, rng, x, v);
      const DoubleTangent qp = ttq_project(sub, h);
      const DoubleTangent qq = ttq_project(sub, qp);
      c.add("bundles/ttq_idempotent", (qq.dm - qp.dm).norm() + (qq.dt - qp.dt).norm(), 1e-8);
      const auto dec = decompose_thm(sub, h);
      c.add("bundles/decomposition_reassembles",
            (dec.q_part.dm + dec.v_part.dm - h.dm).norm() +
                (dec.q_part.dt + dec.v_part.dt - h.dt).norm(),
            1e-12);
      c.add("bundles/decomposition_q_membership", is_qhm(sub, dec.q_part).max(), 1e-7);
      const Vec eps = random_vertical(sub, rng, x);
      const auto bdec = decompose_thm(sub, b_map(sub, x, v, eps));
      c.add("bundles/b_map_zero_q_part", bdec.q_part.dm.norm() + bdec.q_part.dt.norm(),
            1e-8);
      const DoubleTangent q0 = random_qhm(sub, rng, x, v);
      const DoubleTangent f = horizontal_flip(sub, q0);
      const DoubleTangent ff = horizontal_flip(sub, f);
      c.add("bundles/horizontal_flip_involution",
            (ff.v - q0.v).norm() + (ff.dm - q0.dm).norm() + (ff.dt - q0.dt).norm(), 1e-10);
      const Vec cq = connection_map_q(sub, q0);
      const Vec c_total = connection_map(sub.total, q0);
      c.add("bundles/connection_q_vs_projected_connection",
            (cq - materialize(sub.horizontal, x) * c_total).norm(), 1e-7);
    }
  }
  return c.rows();
}

inline std::vector<CheckRow> jacobi_suite(const manifolds::CatalogEntry& e,
                                          const SuiteConfig& cfg) {
  detail::Collector c(cfg);
  Rng rng(cfg.seed + 4);
  const EmbeddedStructure& s = e.structure;
  const int n_runs = std::min(cfg.samples, 3);
  const std::vector<double> tgrid{0.25, 0.5, 0.75, 1.0};
  for (int k = 0; k < n_runs; ++k) {
    const Vec x = e.random_point(rng);
    const Vec v = random_tangent(s, rng, x);
    GeodesicSpec spec{&s, x, v, 1.0, 400, e.geodesic_cf};
    // Special solutions via the variation route.
    const JacobiInit gdot{v, -christoffel(s, x, v, v)};
    const JacobiInit tgdot{Vec::Zero(x.size()), v};
    for (double t : {0.5, 1.0}) {
      auto [gx, gv] = geodesic(spec, t);
      (void)gx;
      c.add("jacobi/special_velocity_field", (jacobi_fd(spec, gdot, t) - gv).norm(), 1e-5);
      c.add("jacobi/special_scaled_velocity_field",
            (jacobi_fd(spec, tgdot, t) - t * gv).norm(), 1e-5);
    }
    // Energy conservation along the plain integrator.
    GeodesicSpec raw{&s, x, v, 1.0, 400, nullptr};
    const double e0 = metric_inner(s, x, v, v);
    auto [ex, ev] = geodesic(raw, 1.0);
    c.add("jacobi/geodesic_energy_drift",
          std::abs(metric_inner(s, ex, ev, ev) / e0 - 1.0), 1e-6);
    // Embedded three-path agreement where a closed form exists.
    if (e.jacobi_cf) {
      const DoubleTangent q = random_double_tangent(s, rng, x, v);
      const JacobiInit init{q.dm, q.dt};
      for (double t : tgrid) {
        const Vec cf = e.jacobi_cf(x, v, q.dm, q.dt, t);
        const Vec fd = jacobi_fd(spec, init, t);
        const Vec ode = jacobi_ode(spec, init, t);
        const double dev = std::max({(cf - fd).cwiseAbs().maxCoeff(),
                                     (cf - ode).cwiseAbs().maxCoeff(),
                                     (fd - ode).cwiseAbs().maxCoeff()});
        c.add("jacobi/three_path_agreement", dev, 1e-4);
      }
    }
  }
  if (e.submersion && (e.jacobi_h_cf || e.lie)) {
    const SubmersedStructure& sub = *e.submersion;
    for (int k = 0; k < n_runs; ++k) {
      const Vec x = e.random_point(rng);
      const Vec v = random_horizontal(sub, rng, x);
      GeodesicSpec spec{&sub.total, x, v, 1.0, 400,
                        e.geodesic_horizontal_cf ? e.geodesic_horizontal_cf : e.geodesic_cf};
      const Vec nu_m = random_horizontal(sub, rng, x);
      const Vec nu_c = random_horizontal(sub, rng, x);
      const Vec nu_t = connection_map_q_inverse(sub, x, nu_m, v, nu_c);
      for (double t : {0.5, 1.0}) {
        Vec cf;
        if (e.jacobi_h_cf) {
          cf = e.jacobi_h_cf(x, v, nu_m, nu_t, t);
        } else {
          // Lift of the total-space closed form through the twisted flip.
          const Vec dt_var = nu_t + 2.0 * oneill_a(sub, x, nu_m, v);
          auto [gx, gv] = geodesic(spec, t);
          (void)gv;
          const int n = static_cast<int>(std::round(std::sqrt(x.size())));
          cf = materialize(sub.horizontal, gx) *
               vec(jacobi_son(unvec(n, n, x), unvec(n, n, v), unvec(n, n, nu_m),
                              unvec(n, n, dt_var), t));
        }
        const Vec fd = jacobi_horizontal_lift(sub, spec, nu_m, nu_t, t);
        const Vec ode = jacobi_ode_submersed(sub, spec, nu_m, nu_t, t);
        const double dev = std::max({(cf - fd).cwiseAbs().maxCoeff(),
                                     (cf - ode).cwiseAbs().maxCoeff(),
                                     (fd - ode).cwiseAbs().maxCoeff()});
        c.add("jacobi/lifted_three_path_agreement", dev, 1e-4);
      }
    }
  }
  if (e.lie) {
    const LieData& lie = *e.lie;
    for (int k = 0; k < n_runs; ++k) {
      const Vec a = (lie.proj_b * rng.gaussian_vec(lie.dim)).normalized();
      const Vec cc = (lie.proj_b * rng.gaussian_vec(lie.dim)).normalized();
      const Vec ee = (lie.proj_b * rng.gaussian_vec(lie.dim)).normalized();
      auto f = [&](double t) { return jacobi_naturally_reductive(lie, a, cc, ee, t); };
      for (double t : {0.3, 0.8}) {
        const double h = 4e-3;
        const Vec fdot = (8.0 * (f(t + h) - f(t - h)) - (f(t + 2 * h) - f(t - 2 * h))) /
                         (12.0 * h);
        const Vec fddot = (-(f(t + 2 * h) + f(t - 2 * h)) +
                           16.0 * (f(t + h) + f(t - h)) - 30.0 * f(t)) /
                          (12.0 * h * h);
        const Vec af_k = lie.proj_k * lie.bracket(a, f(t));
        const double res =
            (fddot + lie.proj_b * lie.bracket(a, fdot) - lie.bracket(a, af_k)).norm();
        c.add("jacobi/naturally_reductive_frame_ode", res, 1e-7);
      }
      const Vec xx = rng.gaussian_vec(lie.dim);
      const Vec xb = lie.proj_b * xx;
      const Vec eiso = -0.5 * (lie.proj_b * lie.bracket(a, xb)) -
                       lie.bracket(a, Vec(lie.proj_k * xx));
      const double dev = (isotropic_jacobi(lie, a, xx, 0.8) -
                          jacobi_naturally_reductive(lie, a, xb, eiso, 0.8))
                             .norm();
      c.add("jacobi/isotropic_substitution", dev, 1e-8);
    }
  }
  return c.rows();
}

inline std::vector<CheckRow> natmetric_suite(const manifolds::CatalogEntry& e,
                                             const SuiteConfig& cfg) {
  detail::Collector c(cfg);
  Rng rng(cfg.seed + 5);
  const EmbeddedStructure& s = e.structure;
  const auto ab = natmetric::sasaki_profile();
  const auto cg = natmetric::cheeger_gromoll_profile();
  const int n = s.space.dim;
  for (int k = 0; k < std::min(cfg.samples, 10); ++k) {
    const Vec x = e.random_point(rng);
    const Vec v = random_tangent(s, rng, x);
    for (const auto* prof : {&ab, &cg}) {
      const Mat g = natmetric::build_G(s, *prof, x, v);
      Eigen::SelfAdjointEigenSolver<Mat> es(sym(g));
      c.add("natmetric/bundle_metric_positive_definite",
            std::max(0.0, -es.eigenvalues().minCoeff()), 0.0);
      const Mat gi = natmetric::G_inverse(s, *prof, x, v);
      c.add("natmetric/bundle_metric_inverse",
            (g * gi - Mat::Identity(2 * n, 2 * n)).norm(), 1e-9);
      const Mat gh = natmetric::hat_g(s, *prof, x, v);
      const Mat ghi = natmetric::hat_g_inverse(s, *prof, x, v);
      c.add("natmetric/fiber_metric_inverse", (gh * ghi - Mat::Identity(n, n)).norm(),
            1e-10);
      const Vec xi = random_tangent(s, rng, x);
      const Vec eta = random_tangent(s, rng, x);
      const Vec hlift = natmetric::lift_h(s, x, v, xi);
      const Vec vlift = natmetric::lift_v(s, eta);
      c.add("natmetric/kernel_orthogonality", std::abs(hlift.dot(g * vlift)), 1e-9);
      const Mat gb = materialize(s.metric, x);
      c.add("natmetric/submersion_isometry_h",
            std::abs(hlift.dot(g * hlift) - xi.dot(gb * xi)), 1e-9);
      c.add("natmetric/submersion_isometry_v",
            std::abs(vlift.dot(g * vlift) - eta.dot(gh * eta)), 1e-9);
      const Mat pg = natmetric::project_G(s, *prof, x, v);
      const Vec t = pg * rng.gaussian_vec(2 * n);
      c.add("natmetric/bundle_projection_membership",
            is_double_tangent(s, {x, v, t.head(n), t.tail(n)}).max(), 1e-8);
    }
  }
  if (e.submersion) {
    const SubmersedStructure& sub = *e.submersion;
    for (int k = 0; k < std::min(cfg.samples, 5); ++k) {
      const Vec x = e.random_point(rng);
      const Vec v = random_horizontal(sub, rng, x);
      const Mat gq = natmetric::build_GQ(sub, ab, x, v);
      Eigen::SelfAdjointEigenSolver<Mat> es(sym(gq));
      c.add("natmetric/horizontal_metric_positive_definite",
            std::max(0.0, -es.eigenvalues().minCoeff()), 0.0);
      const Mat hg = natmetric::project_HG(sub, ab, x, v);
      c.add("natmetric/horizontal_projection_idempotent", (hg * hg - hg).norm(), 1e-9);
      const Vec eps = random_vertical(sub, rng, x);
      const Vec vb = natmetric::lift_b(sub, x, v, eps);
      const DoubleTangent q = random_qhm(sub, rng, x, v);
      Vec tq(2 * n);
      tq << q.dm, q.dt;
      c.add("natmetric/vertical_orthogonal_to_qhm", std::abs(vb.dot(gq * tq)), 1e-9);
      const natmetric::VectorFieldJet fx =
          natmetric::horizontal_p_field(sub, x, random_horizontal(sub, rng, x));
      const natmetric::VectorFieldJet fy =
          natmetric::horizontal_p_field(sub, x, random_horizontal(sub, rng, x));
      const Vec lift = natmetric::nabla_qhm_lift(sub, ab, x, v, fx, fy,
                                                 natmetric::LiftPair::hh);
      const Vec vert = natmetric::connection_q_of(sub, x, v, lift);
      const Vec r = curvature_submersed(sub, x, fx.value, fy.value, v);
      c.add("natmetric/hh_vertical_part_half_curvature",
            (vert - 0.5 * r).cwiseAbs().maxCoeff(), 1e-6);
    }
  }
  return c.rows();
}

inline std::vector<CheckRow> run_all(const manifolds::CatalogEntry& e,
                                     const SuiteConfig& cfg) {
  std::vector<CheckRow> all;
  for (auto rows : {ambient_suite(e, cfg), curvature_suite(e, cfg), submersion_suite(e, cfg),
                    bundle_suite(e, cfg), jacobi_suite(e, cfg), natmetric_suite(e, cfg)})
    all.insert(all.end(), rows.begin(), rows.end());
  std::sort(all.begin(), all.end(),
            [](const CheckRow& a, const CheckRow& b) { return a.name < b.name; });
  return all;
}

}  // namespace riemann::checks

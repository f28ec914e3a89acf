#include "riemann/natmetric.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "riemann/manifolds.hpp"

using namespace riemann;
using namespace riemann::natmetric;

namespace {

struct BundlePoint {
  Vec x, v;
};

BundlePoint random_bundle_point(const manifolds::CatalogEntry& e, Rng& rng) {
  const Vec x = e.random_point(rng);
  return {x, random_tangent(e.structure, rng, x)};
}

}  // namespace

TEST(FiberMetric, ShermanMorrisonInverse) {
  Rng rng(120);
  for (auto ab : {sasaki_profile(), cheeger_gromoll_profile()}) {
    auto entry = manifolds::stiefel(5, 2, 2.0);
    auto [x, v] = random_bundle_point(entry, rng);
    const Mat gh = hat_g(entry.structure, ab, x, v);
    const Mat ghi = hat_g_inverse(entry.structure, ab, x, v);
    EXPECT_NEAR((gh * ghi - Mat::Identity(10, 10)).norm(), 0.0, 1e-10);
  }
}

TEST(FiberMetric, NonPositiveAlphaRejected) {
  Rng rng(121);
  auto entry = manifolds::sphere(3);
  auto [x, v] = random_bundle_point(entry, rng);
  AlphaBeta bad{[](double t) { return 1.0 - 2.0 * t; }, [](double) { return 0.0; },
                [](double) { return -2.0; }, [](double) { return 0.0; }};
  // |v| = 1 makes alpha(1) negative.
  EXPECT_THROW(hat_g(entry.structure, bad, x, v), InvalidParameter);
  EXPECT_THROW(validate_profile(bad), InvalidParameter);
}

TEST(BundleMetric, SasakiSphereMatchesCatalogStructure) {
  // The Sasaki preset on the sphere base reproduces the registered
  // sphere-tangent structure entrywise: G = [[I + vv^T, vx^T], [xv^T, I]] and
  // the projection [[I - xx^T, 0], [-xv^T, I - xx^T]].
  Rng rng(122);
  const int n = 3;
  auto base = manifolds::sphere(n);
  auto catalog = manifolds::sasaki_sphere_tangent(n);
  const AlphaBeta ab = sasaki_profile();
  const Vec p = catalog.random_point(rng);
  const Vec x = p.head(n), v = p.tail(n);
  const Mat g = build_G(base.structure, ab, x, v);
  const Mat g_catalog = materialize(catalog.structure.metric, p);
  EXPECT_NEAR((g - g_catalog).cwiseAbs().maxCoeff(), 0.0, 1e-12);
  Mat expected(2 * n, 2 * n);
  expected.topLeftCorner(n, n) = Mat::Identity(n, n) + v * v.transpose();
  expected.topRightCorner(n, n) = v * x.transpose();
  expected.bottomLeftCorner(n, n) = x * v.transpose();
  expected.bottomRightCorner(n, n) = Mat::Identity(n, n);
  EXPECT_NEAR((g - expected).cwiseAbs().maxCoeff(), 0.0, 1e-12);

  const Mat pg = project_G(base.structure, ab, x, v);
  const Mat pg_catalog = materialize(catalog.structure.projection, p);
  EXPECT_NEAR((pg - pg_catalog).cwiseAbs().maxCoeff(), 0.0, 1e-12);

  const Mat gi = G_inverse(base.structure, ab, x, v);
  EXPECT_NEAR((g * gi - Mat::Identity(2 * n, 2 * n)).norm(), 0.0, 1e-9);
}

TEST(BundleMetric, PositiveDefiniteAndProjectionConsistency) {
  Rng rng(123);
  for (auto ab : {sasaki_profile(), cheeger_gromoll_profile()}) {
    for (auto entry : {manifolds::sphere(4), manifolds::stiefel(5, 2, 2.0)}) {
      for (int trial = 0; trial < 5; ++trial) {
        auto [x, v] = random_bundle_point(entry, rng);
        const Mat g = build_G(entry.structure, ab, x, v);
        Eigen::SelfAdjointEigenSolver<Mat> es(g);
        EXPECT_GT(es.eigenvalues().minCoeff(), 0.0) << entry.name;
        const Mat gi = G_inverse(entry.structure, ab, x, v);
        EXPECT_NEAR((g * gi - Mat::Identity(g.rows(), g.cols())).norm(), 0.0, 1e-9)
            << entry.name;
        const Mat pg = project_G(entry.structure, ab, x, v);
        EXPECT_NEAR((pg * pg - pg).norm(), 0.0, 1e-8) << entry.name;
        const Mat gp = g * pg;
        EXPECT_NEAR((gp - gp.transpose()).norm(), 0.0, 1e-8) << entry.name;
        // Projected ambient pairs satisfy the double-tangent constraints.
        const Vec w = rng.gaussian_vec(2 * entry.structure.space.dim);
        const Vec t = pg * w;
        const int n = entry.structure.space.dim;
        const DoubleTangent q{x, v, t.head(n), t.tail(n)};
        EXPECT_TRUE(is_double_tangent(entry.structure, q, 1e-7).pass) << entry.name;
      }
    }
  }
}

TEST(Lifts, KernelsAndOrthogonality) {
  Rng rng(124);
  for (auto ab : {sasaki_profile(), cheeger_gromoll_profile()}) {
    auto entry = manifolds::stiefel(5, 2, 2.0);
    auto [x, v] = random_bundle_point(entry, rng);
    const int n = entry.structure.space.dim;
    const Vec xi = random_tangent(entry.structure, rng, x);
    const Vec eta = random_tangent(entry.structure, rng, x);
    const Vec h = lift_h(entry.structure, x, v, xi);
    const Vec vl = lift_v(entry.structure, eta);
    // C(xi^h) = 0 and d pi(eta^v) = 0.
    EXPECT_NEAR(connection_of(entry.structure, x, v, h).norm(), 0.0, 1e-12);
    EXPECT_NEAR(vl.head(n).norm(), 0.0, 1e-15);
    // The two kernels are G-orthogonal.
    const Mat g = build_G(entry.structure, ab, x, v);
    EXPECT_NEAR(h.dot(g * vl), 0.0, 1e-9);
    // Lift decomposition of an arbitrary bundle tangent reassembles it.
    const DoubleTangent q = random_double_tangent(entry.structure, rng, x, v);
    Vec tq(2 * n);
    tq << q.dm, q.dt;
    const Vec c = connection_of(entry.structure, x, v, tq);
    const Vec back = lift_h(entry.structure, x, v, q.dm) + lift_v(entry.structure, c);
    EXPECT_NEAR((back - tq).norm(), 0.0, 1e-10);
    // The bundle projection is a Riemannian submersion onto the base and an
    // isometry on fibers: |xi^h|_G = |xi|_g, |eta^v|_G = |eta|_ghat.
    const Mat gb = materialize(entry.structure.metric, x);
    const Mat gh = hat_g(entry.structure, ab, x, v);
    EXPECT_NEAR(h.dot(g * h), xi.dot(gb * xi), 1e-10);
    EXPECT_NEAR(vl.dot(g * vl), eta.dot(gh * eta), 1e-10);
  }
}

TEST(GammaG, SasakiVerticalVerticalPartVanishes) {
  Rng rng(125);
  auto entry = manifolds::sphere(3);
  const AlphaBeta ab = sasaki_profile();
  auto [x, v] = random_bundle_point(entry, rng);
  const Vec xi = random_tangent(entry.structure, rng, x);
  const Vec eta = random_tangent(entry.structure, rng, x);
  const Vec g = gamma_G(entry.structure, ab, x, v, lift_v(entry.structure, xi),
                        lift_v(entry.structure, eta));
  EXPECT_NEAR(g.norm(), 0.0, 1e-10);
}

TEST(GammaG, CheegerGromollCoefficientMatchesDisplay) {
  // F = (2 + |v|^2)/(1 + |v|^2)^2 <Cx, Cy>_g
  //     + (1 + |v|^2)^{-2} <v, Cx>_g <v, Cy>_g.
  Rng rng(126);
  auto entry = manifolds::sphere(4);
  const AlphaBeta ab = cheeger_gromoll_profile();
  auto [x, v] = random_bundle_point(entry, rng);
  v *= 1.7;  // non-unit speed to exercise the profile argument
  const Vec cx = random_tangent(entry.structure, rng, x);
  const Vec cy = random_tangent(entry.structure, rng, x);
  const double t = v.squaredNorm();
  const natmetric::detail::Profile p{ab.alpha(t), ab.beta(t), ab.dalpha(t), ab.dbeta(t), t};
  const double f = f_coefficient(p, cx.dot(cy), v.dot(cx), v.dot(cy));
  const double expected = (2.0 + t) / std::pow(1.0 + t, 2) * cx.dot(cy) +
                          std::pow(1.0 + t, -2) * v.dot(cx) * v.dot(cy);
  EXPECT_NEAR(f, expected, 1e-10 * (1.0 + std::abs(expected)));
}

TEST(GammaG, AgreesWithRegisteredSphereTangentChristoffel) {
  // Christoffel values on tangent pairs are metric-determined, so the
  // natural-metric assembly must agree with the independently registered
  // sphere-tangent structure.
  Rng rng(127);
  const int n = 3;
  auto base = manifolds::sphere(n);
  auto catalog = manifolds::sasaki_sphere_tangent(n);
  const AlphaBeta ab = sasaki_profile();
  for (int trial = 0; trial < 5; ++trial) {
    const Vec p = catalog.random_point(rng);
    const Vec tx = random_tangent(catalog.structure, rng, p);
    const Vec ty = random_tangent(catalog.structure, rng, p);
    const Vec g1 = gamma_G(base.structure, ab, p.head(n), p.tail(n), tx, ty);
    const Vec g2 = christoffel(catalog.structure, p, tx, ty);
    // Both are Christoffel functions of the same metric: they agree up to a
    // normal component, which the bundle projection removes.
    const Mat pg = project_G(base.structure, ab, p.head(n), p.tail(n));
    EXPECT_NEAR((pg * g1 - pg * g2).cwiseAbs().maxCoeff(), 0.0, 1e-8);
    // Symmetric difference of the full values also vanishes (torsion-free).
    const Vec g1s = gamma_G(base.structure, ab, p.head(n), p.tail(n), ty, tx);
    EXPECT_NEAR((g1 - g1s).cwiseAbs().maxCoeff(), 0.0, 1e-8);
  }
}

TEST(GammaG, MetricCompatibilityProbeOnTangentBundle) {
  // Run the base-module compatibility probe through the assembled
  // (T M, G, E^2) structure along a bundle curve.
  Rng rng(128);
  auto base = manifolds::sphere(3);
  for (auto ab : {sasaki_profile(), cheeger_gromoll_profile()}) {
    EmbeddedStructure tm = embedded_tangent_bundle(base.structure, ab);
    const Vec p0 = manifolds::sasaki_sphere_tangent(3).random_point(rng);
    const Vec xi = random_tangent(tm, rng, p0);
    const Vec eta = random_tangent(tm, rng, p0);
    GeodesicSpec spec{&tm, p0, xi, 1.0, 200, nullptr};
    auto field = [&](double t) {
      auto [c, cd] = geodesic(spec, t);
      (void)cd;
      return std::make_pair(c, Vec(project(tm, c, eta)));
    };
    const double h = 1e-5;
    auto [cp, yp] = field(h);
    auto [cm, ym] = field(-h);
    const double lhs =
        (yp.dot(materialize(tm.metric, cp) * yp) - ym.dot(materialize(tm.metric, cm) * ym)) /
        (2.0 * h);
    const Vec y0 = field(0.0).second;
    const Vec ydot = (yp - ym) / (2.0 * h);
    const Vec nabla = ydot + christoffel(tm, p0, xi, y0);
    const double rhs = 2.0 * nabla.dot(materialize(tm.metric, p0) * y0);
    EXPECT_NEAR(lhs, rhs, 1e-4 * (1.0 + std::abs(lhs)));
  }
}

TEST(HorizontalBundleMetric, GrassmannOperatorAndProjection) {
  Rng rng(129);
  auto entry = manifolds::grassmann(5, 2);
  const auto& sub = *entry.submersion;
  const AlphaBeta ab = sasaki_profile();
  const Vec x = entry.random_point(rng);
  const Vec v = random_horizontal(sub, rng, x);
  const Mat y = unvec(5, 2, x), vm = unvec(5, 2, v);
  // Registered Gamma^Q closure against its defining assembly and the paper's
  // matrix form.
  const Vec w = rng.gaussian_vec(10);
  const Vec closure = gamma_q_field(sub, x, w, v);
  const Vec paper = vec(Mat(y * (unvec(5, 2, w).transpose() * vm) -
                            vm * (y.transpose() * unvec(5, 2, w))));
  EXPECT_NEAR((closure - paper).norm(), 0.0, 1e-12);
  // The definition-based extension agrees with the closure on tangent
  // arguments (the two differ off the tangent bundle, which is allowed).
  const Vec wt = random_tangent(sub.total, rng, x);
  EXPECT_NEAR((gamma_q_def(sub, x, wt, v) - gamma_q_field(sub, x, wt, v)).norm(), 0.0,
              1e-9);
  // (D_xi Gamma^Q)(eta, v) closed form of the registered operator.
  const Vec xi = random_horizontal(sub, rng, x);
  const Vec eta = random_horizontal(sub, rng, x);
  const Vec dq_closed = d_gamma_q(sub, x, xi, eta, v);
  const Mat xim = unvec(5, 2, xi), etam = unvec(5, 2, eta);
  EXPECT_NEAR((dq_closed - vec(Mat(xim * (etam.transpose() * vm) -
                                   vm * (xim.transpose() * etam))))
                  .norm(),
              0.0, 1e-12);
  // And Gamma^Q(Gamma^H(xi, eta), v) = -v xi^T eta.
  const Vec ghxe = gamma_h(sub, x, xi, eta);
  EXPECT_NEAR((gamma_q_field(sub, x, ghxe, v) -
               vec(Mat(-vm * (xim.transpose() * etam))))
                  .norm(),
              0.0, 1e-11);

  // G_Q positive definite; ttH_G idempotent with image in Q H M.
  const Mat gq = build_GQ(sub, ab, x, v);
  Eigen::SelfAdjointEigenSolver<Mat> es(gq);
  EXPECT_GT(es.eigenvalues().minCoeff(), 0.0);
  const Mat hg = project_HG(sub, ab, x, v);
  EXPECT_NEAR((hg * hg - hg).norm(), 0.0, 1e-9);
  const Vec amb = rng.gaussian_vec(20);
  const Vec t = hg * amb;
  EXPECT_TRUE(is_qhm(sub, {x, v, t.head(10), t.tail(10)}, 1e-7).pass);
}

TEST(HorizontalBundleMetric, VerticalOrthogonalToQhm) {
  Rng rng(130);
  for (auto ab : {sasaki_profile(), cheeger_gromoll_profile()}) {
    for (auto entry : {manifolds::grassmann(5, 2), manifolds::flag(5, {2, 2, 1})}) {
      const auto& sub = *entry.submersion;
      const Vec x = entry.random_point(rng);
      const Vec v = random_horizontal(sub, rng, x);
      const Mat gq = build_GQ(sub, ab, x, v);
      for (int trial = 0; trial < 5; ++trial) {
        const Vec eps = random_vertical(sub, rng, x);
        const Vec vb = lift_b(sub, x, v, eps);
        const DoubleTangent q = random_qhm(sub, rng, x, v);
        Vec tq(2 * sub.total.space.dim);
        tq << q.dm, q.dt;
        EXPECT_NEAR(vb.dot(gq * tq), 0.0, 1e-9) << entry.name;
      }
      // Restricted to T H M, the G_Q-orthogonal projection is the
      // Q-along-V splitting.
      const DoubleTangent h = random_thm(sub, rng, x, v);
      Vec th(2 * sub.total.space.dim);
      th << h.dm, h.dt;
      const Vec projected = project_HG(sub, ab, x, v) * th;
      const auto dec = decompose_thm(sub, h);
      EXPECT_NEAR((projected.head(sub.total.space.dim) - dec.q_part.dm).norm(), 0.0, 1e-8)
          << entry.name;
      EXPECT_NEAR((projected.tail(sub.total.space.dim) - dec.q_part.dt).norm(), 0.0, 1e-8)
          << entry.name;
      // Isometry on lifts: d q restricted to H M is a Riemannian submersion.
      const Vec xi = random_horizontal(sub, rng, x);
      const Vec hq = lift_h_q(sub, x, v, xi);
      const Mat g = materialize(sub.total.metric, x);
      EXPECT_NEAR(hq.dot(gq * hq), xi.dot(g * xi), 1e-9) << entry.name;
    }
  }
}

TEST(NablaLifts, SasakiVerticalVerticalVanishes) {
  Rng rng(131);
  auto entry = manifolds::grassmann(5, 2);
  const auto& sub = *entry.submersion;
  const Vec x = entry.random_point(rng);
  const Vec v = random_horizontal(sub, rng, x);
  const VectorFieldJet fx = horizontal_p_field(sub, x, random_horizontal(sub, rng, x));
  const VectorFieldJet fy = horizontal_p_field(sub, x, random_horizontal(sub, rng, x));
  const Vec out = nabla_qhm_lift(sub, sasaki_profile(), x, v, fx, fy, LiftPair::vv);
  EXPECT_NEAR(out.norm(), 0.0, 1e-12);
}

TEST(NablaLifts, HhVerticalPartIsHalfCurvature) {
  Rng rng(132);
  auto entry = manifolds::grassmann(5, 2);
  const auto& sub = *entry.submersion;
  const AlphaBeta ab = sasaki_profile();
  const Vec x = entry.random_point(rng);
  const Vec v = random_horizontal(sub, rng, x);
  const VectorFieldJet fx = horizontal_p_field(sub, x, random_horizontal(sub, rng, x));
  const VectorFieldJet fy = horizontal_p_field(sub, x, random_horizontal(sub, rng, x));
  const Vec out = nabla_qhm_lift(sub, ab, x, v, fx, fy, LiftPair::hh);
  // Vertical component of the lift is (R^H_{X,Y} v)/2; recover it through
  // the connection map and compare with the submersion module.
  const int n = 10;
  const Vec vert = connection_q_of(sub, x, v, out);
  const Vec nab = fy.dir_deriv(x, fx.value) + gamma_h(sub, x, fx.value, fy.value);
  const Vec r = curvature_submersed(sub, x, fx.value, fy.value, v);
  // out = (nab, -Gamma^Q(nab, v)) + (0, r/2), so C^Q(out) = r/2 since the
  // h-lift is in the kernel of C^Q... up to Gamma^H(nab, v) terms.
  const Vec expected_vert = 0.5 * r;
  const Vec hpart = out.head(n);
  EXPECT_NEAR((hpart - nab).norm(), 0.0, 1e-9);
  EXPECT_NEAR((vert - expected_vert).cwiseAbs().maxCoeff(), 0.0, 1e-6);
}

TEST(NablaLifts, HvWithParallelFieldIsPureCurvatureTerm) {
  // The commuting horizontal extension has nabla^H_X Y = 0 at the base
  // point for a constant-metric total space, so the hv case reduces to
  // -alpha/2 (R^H_{v, Y} X)^h.
  Rng rng(133);
  auto entry = manifolds::grassmann(5, 2);
  const auto& sub = *entry.submersion;
  const AlphaBeta ab = sasaki_profile();
  const Vec x = entry.random_point(rng);
  const Vec v = random_horizontal(sub, rng, x);
  const VectorFieldJet fx = horizontal_p_field(sub, x, random_horizontal(sub, rng, x));
  const VectorFieldJet fy = horizontal_p_field(sub, x, random_horizontal(sub, rng, x));
  const Vec nab = fy.dir_deriv(x, fx.value) + gamma_h(sub, x, fx.value, fy.value);
  ASSERT_NEAR(nab.norm(), 0.0, 1e-9);
  const Vec out = nabla_qhm_lift(sub, ab, x, v, fx, fy, LiftPair::hv);
  const Vec r = curvature_submersed(sub, x, v, fy.value, fx.value);
  const Vec expected = -0.5 * lift_h_q(sub, x, v, r);
  EXPECT_NEAR((out - expected).cwiseAbs().maxCoeff(), 0.0, 1e-8);
}

TEST(GammaHQ, SasakiVerticalVerticalVanishesAndHhConsistency) {
  Rng rng(134);
  auto entry = manifolds::grassmann(5, 2);
  const auto& sub = *entry.submersion;
  const AlphaBeta ab = sasaki_profile();
  const Vec x = entry.random_point(rng);
  const Vec v = random_horizontal(sub, rng, x);
  const int n = 10;
  // vv part vanishes for the Sasaki profile: feed pure v-lifts.
  const Vec cv1 = random_horizontal(sub, rng, x);
  const Vec cv2 = random_horizontal(sub, rng, x);
  Vec tv1 = Vec::Zero(2 * n), tv2 = Vec::Zero(2 * n);
  tv1.tail(n) = cv1;
  tv2.tail(n) = cv2;
  EXPECT_NEAR(gamma_HQ(sub, ab, x, v, tv1, tv2).norm(), 0.0, 1e-10);

  // Defining property on lifted commuting fields:
  // ttQ nabla~_{X^h} Y^h = D_{X^h} Y^h + Gamma^H_{G_Q}(X^h, Y^h).
  const VectorFieldJet fx = horizontal_p_field(sub, x, random_horizontal(sub, rng, x));
  const VectorFieldJet fy = horizontal_p_field(sub, x, random_horizontal(sub, rng, x));
  const Vec xh = lift_h_q(sub, x, v, fx.value);
  const Vec yh = lift_h_q(sub, x, v, fy.value);
  const Vec lhs = nabla_qhm_lift(sub, ab, x, v, fx, fy, LiftPair::hh);
  // D_{X^h} Y^h: first slot D_X Y, second slot the derivative of
  // y -> -Gamma^Q(Y(y), w) along (X, -Gamma^Q(X, v)).
  const Vec dxy = fy.dir_deriv(x, fx.value);
  const Vec d2 = -d_gamma_q_def(sub, x, fx.value, fy.value, v) -
                 gamma_q_def(sub, x, dxy, v) +
                 gamma_q_def(sub, x, fy.value, gamma_q_def(sub, x, fx.value, v));
  Vec dxh(2 * n);
  dxh << dxy, d2;
  const Vec rhs = dxh + gamma_HQ(sub, ab, x, v, xh, yh);
  EXPECT_NEAR((lhs - rhs).cwiseAbs().maxCoeff(), 0.0, 1e-5);
}

TEST(GammaHQ, CurvatureTermSplitsAntisymmetrically) {
  // The hh formula's antisymmetric part in (xi, eta) of the fiber slot is
  // the half-curvature term.
  Rng rng(135);
  auto entry = manifolds::grassmann(5, 2);
  const auto& sub = *entry.submersion;
  const AlphaBeta ab = sasaki_profile();
  const Vec x = entry.random_point(rng);
  const Vec v = random_horizontal(sub, rng, x);
  const Vec xi = random_horizontal(sub, rng, x);
  const Vec eta = random_horizontal(sub, rng, x);
  const Vec xh = lift_h_q(sub, x, v, xi);
  const Vec eh = lift_h_q(sub, x, v, eta);
  const Vec gxe = gamma_HQ(sub, ab, x, v, xh, eh);
  const Vec gex = gamma_HQ(sub, ab, x, v, eh, xh);
  const int n = 10;
  // Recover the curvature from the antisymmetric part of the hh case:
  // C^Q(gxe) - C^Q(gex) includes R^H_{xi,eta} v plus the (non-symmetric)
  // Gamma^H cross terms; compare against the direct evaluation instead.
  const Vec anti = gxe - gex;
  const Vec anti_expected =
      [&]() {
        auto gh = [&](const Vec& w1, const Vec& w2) {
          return riemann::detail::gamma_h_field(sub, x, w1, w2);
        };
        Vec out = Vec::Zero(2 * n);
        const Vec g1 = gh(xi, eta), g2 = gh(eta, xi);
        const Vec r = curvature_submersed(sub, x, xi, eta, v);
        out.head(n) = g1 - g2;
        out.tail(n) = -gamma_q_def(sub, x, g1 - g2, v) +
                      d_gamma_q_def(sub, x, xi, eta, v) - d_gamma_q_def(sub, x, eta, xi, v) -
                      gh(eta, gh(xi, v)) + gh(xi, gh(eta, v)) + r;
        return out;
      }();
  EXPECT_NEAR((anti - anti_expected).cwiseAbs().maxCoeff(), 0.0, 1e-6);
}

TEST(Lifts, KernelOrthogonalityAcrossCatalog) {
  // dpi-kernel and connection-map-kernel stay G-orthogonal over many seeded
  // bundle points on each base manifold, for both shipped profiles.
  Rng rng(136);
  for (auto entry : {manifolds::sphere(4), manifolds::so_n(3), manifolds::stiefel(5, 2, 2.0)}) {
    for (auto ab : {sasaki_profile(), cheeger_gromoll_profile()}) {
      for (int k = 0; k < 100; ++k) {
        const Vec x = entry.random_point(rng);
        const Vec v = random_tangent(entry.structure, rng, x);
        const Mat g = build_G(entry.structure, ab, x, v);
        const Vec xi = random_tangent(entry.structure, rng, x);
        const Vec eta = random_tangent(entry.structure, rng, x);
        const Vec h = lift_h(entry.structure, x, v, xi);
        const Vec vl = lift_v(entry.structure, eta);
        EXPECT_NEAR(h.dot(g * vl), 0.0, 1e-9) << entry.name;
      }
    }
  }
}

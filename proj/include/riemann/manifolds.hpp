#pragma once

#include "riemann/jacobi.hpp"

#include <map>
#include <numeric>
#include <sstream>
#include <vector>

namespace riemann::manifolds {

// ---------------------------------------------------------------------------
// Catalog of closed-form example structures. Every entry registers analytic
// operator fields together with their directional derivatives, a membership
// residual, seeded samplers, and whatever closed forms (geodesics, curvature,
// Jacobi fields) exist for it. The entries double as oracles for the generic
// pipelines.
// ---------------------------------------------------------------------------

struct CatalogEntry {
  std::string name;
  std::map<std::string, double> params;
  EmbeddedStructure structure;
  std::optional<SubmersedStructure> submersion;
  std::optional<LieData> lie;
  std::function<Vec(Rng&)> random_point;
  // Closed forms; null when the entry has none.
  GeodesicClosedForm geodesic_cf;             // valid for arbitrary tangents
  GeodesicClosedForm geodesic_horizontal_cf;  // valid for horizontal tangents
  std::function<Vec(const Vec&, const Vec&, const Vec&, const Vec&)> curvature_cf;
  std::function<Vec(const Vec&, const Vec&, const Vec&, const Vec&)> curvature_h_cf;
  std::function<Vec(const Vec&, const Vec&, const Vec&, const Vec&, double)> jacobi_cf;
  std::function<Vec(const Vec&, const Vec&, const Vec&, const Vec&, double)> jacobi_h_cf;
};

// --------------------------------- sphere ----------------------------------
// Unit sphere S^{n-1} in R^n with the induced metric. P_x w = w - x x^T w,
// Gamma(w1, w2) = x w1^T w2.

inline CatalogEntry sphere(int n) {
  if (n < 2) throw InvalidParameter("sphere: need ambient dimension n >= 2");
  CatalogEntry e;
  e.name = "sphere";
  e.params = {{"n", static_cast<double>(n)}};
  EmbeddedStructure s;
  s.space = AmbientSpace::vector_space(n);
  s.metric.evaluate = [n](const Vec&) { return Mat::Identity(n, n); };
  s.metric.dir_deriv = [n](const Vec&, const Vec&) { return Mat::Zero(n, n); };
  s.metric_is_constant = true;
  s.projection.evaluate = [n](const Vec& x) -> Mat {
    return Mat::Identity(n, n) - x * x.transpose();
  };
  s.projection.dir_deriv = [n](const Vec& x, const Vec& xi) -> Mat {
    return -(xi * x.transpose() + x * xi.transpose());
  };
  s.christoffel = [](const Vec& x, const Vec& w1, const Vec& w2) -> Vec {
    return x * w1.dot(w2);
  };
  s.d_christoffel = [](const Vec&, const Vec& dir, const Vec& w1, const Vec& w2) -> Vec {
    return dir * w1.dot(w2);
  };
  s.gamma_e = [n](const Vec&, const Vec&, const Vec&) { return Vec::Zero(n); };
  s.membership = [](const Vec& x) { return std::abs(x.squaredNorm() - 1.0); };
  e.structure = s;
  e.random_point = [n](Rng& rng) -> Vec {
    Vec x = rng.gaussian_vec(n);
    return x / x.norm();
  };
  e.geodesic_cf = [](const Vec& x, const Vec& v, double t) -> std::pair<Vec, Vec> {
    const double speed = v.norm();
    if (speed < 1e-300) return {x, v};
    const Vec dir = v / speed;
    const double th = t * speed;
    return {x * std::cos(th) + dir * std::sin(th),
            -x * speed * std::sin(th) + v * std::cos(th)};
  };
  e.curvature_cf = [](const Vec&, const Vec& xi, const Vec& eta, const Vec& phi) -> Vec {
    return xi.dot(phi) * eta - eta.dot(phi) * xi;
  };
  return e;
}

// ----------------------------------- SO(n) ----------------------------------
// Special orthogonal group in R^{n x n} with metric operator g = I/2.
// P(U) w = (w - U w^T U)/2, Gamma(w1, w2) = (w1 w2^T U + U w2^T w1)/2.

inline CatalogEntry so_n(int n) {
  if (n < 2) throw InvalidParameter("so_n: need n >= 2");
  CatalogEntry e;
  e.name = "so";
  e.params = {{"n", static_cast<double>(n)}};
  const AmbientSpace space = AmbientSpace::matrix_space(n, n);
  const int dim = space.dim;
  auto mat = [n](const Vec& w) { return unvec(n, n, w); };

  EmbeddedStructure s;
  s.space = space;
  s.metric.evaluate = [dim](const Vec&) -> Mat { return 0.5 * Mat::Identity(dim, dim); };
  s.metric.dir_deriv = [dim](const Vec&, const Vec&) { return Mat::Zero(dim, dim); };
  s.metric_is_constant = true;
  s.projection.evaluate = [dim, mat](const Vec& xu) -> Mat {
    const Mat u = mat(xu);
    return operator_from_apply(dim, [&](const Vec& w) -> Vec {
      const Mat wm = mat(w);
      return vec(0.5 * (wm - u * wm.transpose() * u));
    });
  };
  s.projection.dir_deriv = [dim, mat](const Vec& xu, const Vec& xiu) -> Mat {
    const Mat u = mat(xu), xi = mat(xiu);
    return operator_from_apply(dim, [&](const Vec& w) -> Vec {
      const Mat wm = mat(w);
      return vec(-0.5 * (xi * wm.transpose() * u + u * wm.transpose() * xi));
    });
  };
  s.christoffel = [mat](const Vec& xu, const Vec& w1, const Vec& w2) -> Vec {
    const Mat u = mat(xu), a = mat(w1), b = mat(w2);
    return vec(0.5 * (a * b.transpose() * u + u * b.transpose() * a));
  };
  s.d_christoffel = [mat](const Vec&, const Vec& dir, const Vec& w1, const Vec& w2) -> Vec {
    const Mat d = mat(dir), a = mat(w1), b = mat(w2);
    return vec(0.5 * (a * b.transpose() * d + d * b.transpose() * a));
  };
  s.gamma_e = [dim](const Vec&, const Vec&, const Vec&) { return Vec::Zero(dim); };
  s.membership = [n, mat](const Vec& xu) {
    const Mat u = mat(xu);
    return (u.transpose() * u - Mat::Identity(n, n)).norm() + std::abs(u.determinant() - 1.0);
  };
  e.structure = s;
  e.random_point = [n](Rng& rng) -> Vec {
    const Mat g = rng.gaussian_mat(n, n);
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i)
      if (r(i, i) < 0) q.col(i) = -q.col(i);
    if (q.determinant() < 0) q.col(n - 1) = -q.col(n - 1);
    return vec(q);
  };
  e.geodesic_cf = [mat](const Vec& xu, const Vec& vu, double t) -> std::pair<Vec, Vec> {
    const Mat u = mat(xu);
    const Mat a = u.transpose() * mat(vu);
    const Mat g = u * matfun::expm(t * a);
    return {vec(g), vec(g * a)};
  };
  e.curvature_cf = [mat](const Vec& xu, const Vec& xiu, const Vec& etau,
                         const Vec& phiu) -> Vec {
    const Mat u = mat(xu);
    const Mat a = u.transpose() * mat(xiu);
    const Mat b = u.transpose() * mat(etau);
    const Mat c = u.transpose() * mat(phiu);
    const Mat ab = a * b - b * a;
    return vec(0.25 * u * (ab * c - c * ab));
  };
  e.jacobi_cf = [mat](const Vec& xu, const Vec& vu, const Vec& dmu, const Vec& dtu,
                      double t) -> Vec {
    return vec(jacobi_son(mat(xu), mat(vu), mat(dmu), mat(dtu), t));
  };
  return e;
}

// ------------------------- tangent bundle of a sphere -----------------------
// T S^{n-1} in R^{2n} with the Sasaki metric operator of the round sphere.
// Points are stacked pairs (x, v) with x^T x = 1, x^T v = 0. The metric is
// genuinely non-constant, exercising the index-raised term and the gamma-ring
// paths of the generic assembly.

inline CatalogEntry sasaki_sphere_tangent(int n) {
  if (n < 2) throw InvalidParameter("sasaki_sphere_tangent: need n >= 2");
  CatalogEntry e;
  e.name = "sasaki_sphere_tangent";
  e.params = {{"n", static_cast<double>(n)}};
  const int dim = 2 * n;
  auto xpart = [n](const Vec& w) -> Vec { return w.head(n); };
  auto vpart = [n](const Vec& w) -> Vec { return w.tail(n); };
  auto stack = [n](const Vec& a, const Vec& b) -> Vec {
    Vec out(2 * n);
    out << a, b;
    return out;
  };

  EmbeddedStructure s;
  s.space = AmbientSpace::vector_space(dim);
  s.metric.evaluate = [n, dim, xpart, vpart](const Vec& p) -> Mat {
    const Vec x = xpart(p), v = vpart(p);
    Mat g(dim, dim);
    g.topLeftCorner(n, n) = Mat::Identity(n, n) + v * v.transpose();
    g.topRightCorner(n, n) = v * x.transpose();
    g.bottomLeftCorner(n, n) = x * v.transpose();
    g.bottomRightCorner(n, n) = Mat::Identity(n, n);
    return g;
  };
  s.metric.dir_deriv = [n, dim, xpart, vpart](const Vec& p, const Vec& d) -> Mat {
    const Vec x = xpart(p), v = vpart(p);
    const Vec dm = xpart(d), dt = vpart(d);
    Mat g = Mat::Zero(dim, dim);
    g.topLeftCorner(n, n) = dt * v.transpose() + v * dt.transpose();
    g.topRightCorner(n, n) = dt * x.transpose() + v * dm.transpose();
    g.bottomLeftCorner(n, n) = dm * v.transpose() + x * dt.transpose();
    return g;
  };
  s.projection.evaluate = [n, dim, xpart, vpart](const Vec& p) -> Mat {
    const Vec x = xpart(p), v = vpart(p);
    Mat pr = Mat::Zero(dim, dim);
    const Mat tang = Mat::Identity(n, n) - x * x.transpose();
    pr.topLeftCorner(n, n) = tang;
    pr.bottomLeftCorner(n, n) = -x * v.transpose();
    pr.bottomRightCorner(n, n) = tang;
    return pr;
  };
  s.projection.dir_deriv = [n, dim, xpart, vpart](const Vec& p, const Vec& d) -> Mat {
    const Vec x = xpart(p), v = vpart(p);
    const Vec dm = xpart(d), dt = vpart(d);
    Mat pr = Mat::Zero(dim, dim);
    const Mat dtang = -(dm * x.transpose() + x * dm.transpose());
    pr.topLeftCorner(n, n) = dtang;
    pr.bottomLeftCorner(n, n) = -(dm * v.transpose() + x * dt.transpose());
    pr.bottomRightCorner(n, n) = dtang;
    return pr;
  };
  s.x_raiser = [xpart, vpart, stack](const Vec& p, const Vec& xi, const Vec& eta) -> Vec {
    const Vec x = xpart(p), v = vpart(p);
    const Vec xm = xpart(xi), xt = vpart(xi);
    const Vec em = xpart(eta), et = vpart(eta);
    const Vec top = xt * em.dot(v) + et * xm.dot(v);
    const Vec bottom = em * (xm.dot(v) + xt.dot(x)) + xm * (em.dot(v) + et.dot(x));
    return stack(top, bottom);
  };
  s.membership = [xpart, vpart](const Vec& p) {
    const Vec x = xpart(p), v = vpart(p);
    return std::abs(x.squaredNorm() - 1.0) + std::abs(x.dot(v));
  };
  e.structure = s;
  e.random_point = [n, stack](Rng& rng) -> Vec {
    Vec x = rng.gaussian_vec(n);
    x /= x.norm();
    Vec v = rng.gaussian_vec(n);
    v -= x.dot(v) * x;
    v /= v.norm();
    return stack(x, v);
  };
  return e;
}

// ---------------------------------- Stiefel ---------------------------------
// St(p, n) in R^{n x p} with the one-parameter metric family
// g(Y) w = w + (alpha - 1) Y Y^T w. The tangent projection
// P(Y) w = w - Y sym(Y^T w) is the same for every alpha > 0.

inline CatalogEntry stiefel(int n, int p, double alpha) {
  if (n <= p || p < 1) throw InvalidParameter("stiefel: need n > p >= 1");
  if (alpha <= 0.0) throw InvalidParameter("stiefel: need alpha > 0");
  CatalogEntry e;
  e.name = "stiefel";
  e.params = {{"n", static_cast<double>(n)}, {"p", static_cast<double>(p)}, {"alpha", alpha}};
  const AmbientSpace space = AmbientSpace::matrix_space(n, p);
  const int dim = space.dim;
  auto mat = [n, p](const Vec& w) { return unvec(n, p, w); };

  EmbeddedStructure s;
  s.space = space;
  s.metric.evaluate = [dim, mat, alpha](const Vec& yv) -> Mat {
    const Mat y = mat(yv);
    return operator_from_apply(dim, [&](const Vec& w) -> Vec {
      const Mat wm = mat(w);
      return vec(wm + (alpha - 1.0) * y * (y.transpose() * wm));
    });
  };
  s.metric.dir_deriv = [dim, mat, alpha](const Vec& yv, const Vec& xiv) -> Mat {
    const Mat y = mat(yv), xi = mat(xiv);
    return operator_from_apply(dim, [&](const Vec& w) -> Vec {
      const Mat wm = mat(w);
      return vec((alpha - 1.0) * (xi * (y.transpose() * wm) + y * (xi.transpose() * wm)));
    });
  };
  s.metric_is_constant = (alpha == 1.0);
  s.projection.evaluate = [dim, mat](const Vec& yv) -> Mat {
    const Mat y = mat(yv);
    return operator_from_apply(dim, [&](const Vec& w) -> Vec {
      const Mat wm = mat(w);
      return vec(wm - y * sym(y.transpose() * wm));
    });
  };
  s.projection.dir_deriv = [dim, mat](const Vec& yv, const Vec& xiv) -> Mat {
    const Mat y = mat(yv), xi = mat(xiv);
    return operator_from_apply(dim, [&](const Vec& w) -> Vec {
      const Mat wm = mat(w);
      return vec(-xi * sym(y.transpose() * wm) - y * sym(xi.transpose() * wm));
    });
  };
  s.x_raiser = [mat, alpha](const Vec& yv, const Vec& xiv, const Vec& etav) -> Vec {
    const Mat y = mat(yv), xi = mat(xiv), eta = mat(etav);
    return vec((alpha - 1.0) * (eta * xi.transpose() + xi * eta.transpose()) * y);
  };
  if (alpha == 1.0) {
    s.gamma_e = [dim](const Vec&, const Vec&, const Vec&) { return Vec::Zero(dim); };
  }
  s.membership = [p, mat](const Vec& yv) {
    const Mat y = mat(yv);
    return (y.transpose() * y - Mat::Identity(p, p)).norm();
  };
  e.structure = s;
  e.random_point = [n, p](Rng& rng) -> Vec {
    const Mat g = rng.gaussian_mat(n, p);
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ() * Mat::Identity(n, p);
    const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < p; ++i)
      if (r(i, i) < 0) q.col(i) = -q.col(i);
    return vec(q);
  };
  return e;
}

// ------------------------------ flag manifolds ------------------------------
// SO(n) / S(O(d0) x ... x O(dq)) as a submersed structure over SO(n). The
// vertical space at U is U k with k the block-diagonal antisymmetric algebra
// of the partition.

namespace detail {

inline std::vector<Mat> partition_blocks(int n, const std::vector<int>& d) {
  std::vector<Mat> ks;
  int off = 0;
  for (int di : d) {
    Mat k = Mat::Zero(n, n);
    k.block(off, off, di, di) = Mat::Identity(di, di);
    ks.push_back(k);
    off += di;
  }
  return ks;
}

// Block-diagonal part of a matrix with respect to a partition.
inline Mat block_diag_part(const std::vector<Mat>& ks, const Mat& x) {
  Mat out = Mat::Zero(x.rows(), x.cols());
  for (const Mat& k : ks) out += k * x * k;
  return out;
}

// Coordinates on the antisymmetric algebra o(n): basis E_ij - E_ji, i < j,
// orthonormal under <X, Y> = tr(X^T Y)/2.
struct SkewBasis {
  int n = 0;
  int dim = 0;
  SkewBasis() = default;
  explicit SkewBasis(int nn) : n(nn), dim(nn * (nn - 1) / 2) {}
  Mat to_matrix(const Vec& c) const {
    Mat x = Mat::Zero(n, n);
    int k = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++k) {
        x(i, j) = c[k];
        x(j, i) = -c[k];
      }
    return x;
  }
  Vec to_coords(const Mat& x) const {
    Vec c(dim);
    int k = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++k) c[k] = x(i, j);
    return c;
  }
};

}  // namespace detail

// Lie data of the flag quotient: m = o(n), k the block-diagonal subalgebra,
// b its orthogonal complement, with the bi-invariant inner product.
inline LieData flag_liedata(int n, const std::vector<int>& partition) {
  detail::SkewBasis basis(n);
  const auto ks = detail::partition_blocks(n, partition);
  LieData lie;
  lie.dim = basis.dim;
  lie.bracket = [basis](const Vec& a, const Vec& b) -> Vec {
    const Mat am = basis.to_matrix(a), bm = basis.to_matrix(b);
    return basis.to_coords(am * bm - bm * am);
  };
  Mat pk = Mat::Zero(basis.dim, basis.dim);
  {
    int k = 0;
    int off = 0;
    std::vector<int> block_of(n, -1);
    for (std::size_t b = 0; b < partition.size(); ++b) {
      for (int i = 0; i < partition[b]; ++i) block_of[off + i] = static_cast<int>(b);
      off += partition[b];
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++k)
        if (block_of[i] == block_of[j]) pk(k, k) = 1.0;
  }
  lie.proj_k = pk;
  lie.proj_b = Mat::Identity(basis.dim, basis.dim) - pk;
  lie.inner = Mat::Identity(basis.dim, basis.dim);
  return lie;
}

inline CatalogEntry flag(int n, const std::vector<int>& partition) {
  if (std::accumulate(partition.begin(), partition.end(), 0) != n || partition.size() < 2)
    throw InvalidParameter("flag: partition must have >= 2 parts summing to n");
  for (int d : partition)
    if (d <= 0) throw InvalidParameter("flag: partition entries must be positive");

  CatalogEntry e = so_n(n);
  e.name = "flag";
  for (std::size_t i = 0; i < partition.size(); ++i)
    e.params["d" + std::to_string(i)] = partition[i];

  const auto ks = detail::partition_blocks(n, partition);
  const int dim = n * n;
  auto mat = [n](const Vec& w) { return unvec(n, n, w); };

  SubmersedStructure sub;
  sub.total = e.structure;
  sub.vertical.evaluate = [dim, mat, ks](const Vec& xu) -> Mat {
    const Mat u = mat(xu);
    return operator_from_apply(dim, [&](const Vec& w) -> Vec {
      const Mat wm = mat(w);
      const Mat sk = u.transpose() * wm - wm.transpose() * u;
      return vec(0.5 * u * detail::block_diag_part(ks, sk));
    });
  };
  sub.vertical.dir_deriv = [dim, mat, ks](const Vec& xu, const Vec& xiu) -> Mat {
    const Mat u = mat(xu), xi = mat(xiu);
    return operator_from_apply(dim, [&](const Vec& w) -> Vec {
      const Mat wm = mat(w);
      const Mat sk = u.transpose() * wm - wm.transpose() * u;
      const Mat dsk = xi.transpose() * wm - wm.transpose() * xi;
      return vec(0.5 * (xi * detail::block_diag_part(ks, sk) +
                        u * detail::block_diag_part(ks, dsk)));
    });
  };
  sub.horizontal.evaluate = [dim, mat, ks](const Vec& xu) -> Mat {
    const Mat u = mat(xu);
    return operator_from_apply(dim, [&](const Vec& w) -> Vec {
      const Mat wm = mat(w);
      const Mat sk = u.transpose() * wm - wm.transpose() * u;
      return vec(0.5 * (wm - u * wm.transpose() * u -
                        u * detail::block_diag_part(ks, sk)));
    });
  };
  sub.horizontal.dir_deriv = [dim, mat, ks](const Vec& xu, const Vec& xiu) -> Mat {
    const Mat u = mat(xu), xi = mat(xiu);
    return operator_from_apply(dim, [&](const Vec& w) -> Vec {
      const Mat wm = mat(w);
      const Mat sk = u.transpose() * wm - wm.transpose() * u;
      const Mat dsk = xi.transpose() * wm - wm.transpose() * xi;
      return vec(0.5 * (-xi * wm.transpose() * u - u * wm.transpose() * xi -
                        xi * detail::block_diag_part(ks, sk) -
                        u * detail::block_diag_part(ks, dsk)));
    });
  };
  // Gamma^H(w1, w2) = -(D_{w1} ttH) w2, valid for ambient second argument.
  sub.gamma_h = [mat, ks](const Vec& xu, const Vec& w1, const Vec& w2) -> Vec {
    const Mat u = mat(xu), a = mat(w1), b = mat(w2);
    const Mat sk = u.transpose() * b - b.transpose() * u;
    const Mat dsk = a.transpose() * b - b.transpose() * a;
    return vec(0.5 * (a * b.transpose() * u + u * b.transpose() * a +
                      a * detail::block_diag_part(ks, sk) +
                      u * detail::block_diag_part(ks, dsk)));
  };
  sub.d_gamma_h = [mat, ks](const Vec&, const Vec& diru, const Vec& w1, const Vec& w2) -> Vec {
    const Mat d = mat(diru), a = mat(w1), b = mat(w2);
    const Mat dsk = d.transpose() * b - b.transpose() * d;
    const Mat sk2 = a.transpose() * b - b.transpose() * a;
    return vec(0.5 * (a * b.transpose() * d + d * b.transpose() * a +
                      a * detail::block_diag_part(ks, dsk) +
                      d * detail::block_diag_part(ks, sk2)));
  };
  e.submersion = sub;
  e.lie = flag_liedata(n, partition);

  // Lifted curvature at U for horizontal xi = UA, eta = UB, phi = UC:
  // (1/4) U { [[A,B],C]_b + 2 [[A,B]_k, C] - [[B,C]_k, A] - [[C,A]_k, B] }.
  e.curvature_h_cf = [mat, ks](const Vec& xu, const Vec& xiu, const Vec& etau,
                               const Vec& phiu) -> Vec {
    const Mat u = mat(xu);
    const Mat a = u.transpose() * mat(xiu);
    const Mat b = u.transpose() * mat(etau);
    const Mat c = u.transpose() * mat(phiu);
    auto br = [](const Mat& x, const Mat& y) -> Mat { return x * y - y * x; };
    auto kpart = [&ks](const Mat& x) -> Mat { return detail::block_diag_part(ks, x); };
    auto bpart = [&](const Mat& x) -> Mat { return x - kpart(x); };
    const Mat inner = bpart(br(br(a, b), c)) + 2.0 * br(kpart(br(a, b)), c) -
                      br(kpart(br(b, c)), a) - br(kpart(br(c, a)), b);
    return vec(0.25 * u * inner);
  };
  return e;
}

// Classical naturally reductive curvature expression, used as an independent
// rearrangement check of the flag closed form:
// 4 R_{xi,eta} phi = U { 4 [[A,B]_k, C] - [A,[B,C]_b]_b - [B,[C,A]_b]_b
//                        + 2 [[A,B]_b, C]_b }.
inline Vec flag_curvature_naturally_reductive(int n, const std::vector<int>& partition,
                                              const Vec& xu, const Vec& xiu,
                                              const Vec& etau, const Vec& phiu) {
  const auto ks = detail::partition_blocks(n, partition);
  const Mat u = unvec(n, n, xu);
  const Mat a = u.transpose() * unvec(n, n, xiu);
  const Mat b = u.transpose() * unvec(n, n, etau);
  const Mat c = u.transpose() * unvec(n, n, phiu);
  auto br = [](const Mat& x, const Mat& y) -> Mat { return x * y - y * x; };
  auto kpart = [&ks](const Mat& x) -> Mat { return detail::block_diag_part(ks, x); };
  auto bpart = [&](const Mat& x) -> Mat { return x - kpart(x); };
  const Mat inner = 4.0 * br(kpart(br(a, b)), c) - bpart(br(a, bpart(br(b, c)))) -
                    bpart(br(b, bpart(br(c, a)))) + 2.0 * bpart(br(bpart(br(a, b)), c));
  return vec(0.25 * u * inner);
}

// --------------------------------- Grassmann --------------------------------
// Gr(p, n) as the quotient of St(p, n) (embedded metric) by O(p). Vertical
// vectors are Y b with b antisymmetric; ttH w = w - Y Y^T w.

inline CatalogEntry grassmann(int n, int p) {
  if (n <= p || p < 1) throw InvalidParameter("grassmann: need n > p >= 1");
  CatalogEntry e = stiefel(n, p, 1.0);
  e.name = "grassmann";
  e.params = {{"n", static_cast<double>(n)}, {"p", static_cast<double>(p)}};
  const int dim = n * p;
  auto mat = [n, p](const Vec& w) { return unvec(n, p, w); };

  SubmersedStructure sub;
  sub.total = e.structure;
  sub.vertical.evaluate = [dim, mat](const Vec& yv) -> Mat {
    const Mat y = mat(yv);
    return operator_from_apply(dim, [&](const Vec& w) -> Vec {
      const Mat wm = mat(w);
      return vec(0.5 * y * (y.transpose() * wm - wm.transpose() * y));
    });
  };
  sub.vertical.dir_deriv = [dim, mat](const Vec& yv, const Vec& xiv) -> Mat {
    const Mat y = mat(yv), xi = mat(xiv);
    return operator_from_apply(dim, [&](const Vec& w) -> Vec {
      const Mat wm = mat(w);
      return vec(0.5 * (xi * (y.transpose() * wm - wm.transpose() * y) +
                        y * (xi.transpose() * wm - wm.transpose() * xi)));
    });
  };
  sub.horizontal.evaluate = [dim, mat](const Vec& yv) -> Mat {
    const Mat y = mat(yv);
    return operator_from_apply(dim, [&](const Vec& w) -> Vec {
      const Mat wm = mat(w);
      return vec(wm - y * (y.transpose() * wm));
    });
  };
  sub.horizontal.dir_deriv = [dim, mat](const Vec& yv, const Vec& xiv) -> Mat {
    const Mat y = mat(yv), xi = mat(xiv);
    return operator_from_apply(dim, [&](const Vec& w) -> Vec {
      const Mat wm = mat(w);
      return vec(-xi * (y.transpose() * wm) - y * (xi.transpose() * wm));
    });
  };
  sub.gamma_h = [mat](const Vec& yv, const Vec& w1, const Vec& w2) -> Vec {
    const Mat y = mat(yv), a = mat(w1), b = mat(w2);
    return vec(y * (a.transpose() * b) + a * (y.transpose() * b));
  };
  sub.d_gamma_h = [mat](const Vec&, const Vec& dirv, const Vec& w1, const Vec& w2) -> Vec {
    const Mat d = mat(dirv), a = mat(w1), b = mat(w2);
    return vec(d * (a.transpose() * b) + a * (d.transpose() * b));
  };
  sub.gamma_q = [mat](const Vec& yv, const Vec& w, const Vec& v) -> Vec {
    const Mat y = mat(yv), wm = mat(w), vm = mat(v);
    return vec(y * (wm.transpose() * vm) - vm * (y.transpose() * wm));
  };
  sub.d_gamma_q = [mat](const Vec&, const Vec& dirv, const Vec& w, const Vec& v) -> Vec {
    const Mat d = mat(dirv), wm = mat(w), vm = mat(v);
    return vec(d * (wm.transpose() * vm) - vm * (d.transpose() * wm));
  };
  e.submersion = sub;

  e.geodesic_horizontal_cf = [mat](const Vec& yv, const Vec& etav,
                                   double t) -> std::pair<Vec, Vec> {
    const Mat y = mat(yv), eta = mat(etav);
    const Mat s = eta.transpose() * eta;
    const auto jet = matfun::csr_ssr_jet(t * t * s);
    const Mat g = y * jet.c + t * eta * jet.s;
    const Mat gdot = eta * jet.c - t * y * (s * jet.s);
    return {vec(g), vec(gdot)};
  };
  e.curvature_h_cf = [mat](const Vec&, const Vec& xiv, const Vec& etav,
                           const Vec& phiv) -> Vec {
    const Mat xi = mat(xiv), eta = mat(etav), phi = mat(phiv);
    return vec(-xi * (eta.transpose() * phi) + eta * (xi.transpose() * phi) +
               phi * (xi.transpose() * eta) - phi * (eta.transpose() * xi));
  };
  e.jacobi_h_cf = [mat](const Vec& yv, const Vec& etav, const Vec& nmv, const Vec& ntv,
                        double t) -> Vec {
    return vec(jacobi_grassmann(mat(yv), mat(etav), mat(nmv), mat(ntv), t));
  };
  return e;
}

// ------------------ Stiefel quotient Lie data (zero checks) ------------------
// m = o(n) = k (+) b0 (+) b1 with k the bottom-right (n-p) block algebra, b0
// the top-left p block, b1 the off-diagonal strip. [b0, k] = 0 while
// [b0, b]_b != 0, which feeds the vanishing checks of isotropic fields.

struct StiefelLieData {
  LieData lie;
  Mat proj_b0, proj_b1;
};

inline StiefelLieData stiefel_homogeneous_liedata(int n, int p) {
  if (n <= p || p < 1) throw InvalidParameter("stiefel_homogeneous_liedata: need n > p >= 1");
  detail::SkewBasis basis(n);
  LieData lie;
  lie.dim = basis.dim;
  lie.bracket = [basis](const Vec& a, const Vec& b) -> Vec {
    const Mat am = basis.to_matrix(a), bm = basis.to_matrix(b);
    return basis.to_coords(am * bm - bm * am);
  };
  Mat pk = Mat::Zero(basis.dim, basis.dim);
  Mat pb0 = Mat::Zero(basis.dim, basis.dim);
  Mat pb1 = Mat::Zero(basis.dim, basis.dim);
  int k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++k) {
      if (i >= p && j >= p) pk(k, k) = 1.0;
      else if (i < p && j < p) pb0(k, k) = 1.0;
      else pb1(k, k) = 1.0;
    }
  lie.proj_k = pk;
  lie.proj_b = pb0 + pb1;
  lie.inner = Mat::Identity(basis.dim, basis.dim);
  return {lie, pb0, pb1};
}

// ------------------------------- CLI factory --------------------------------

struct CatalogRequest {
  std::string manifold;
  int n = 0;
  int p = 0;
  double alpha = 1.0;
  std::vector<int> partition;
};

inline CatalogEntry make_entry(const CatalogRequest& req) {
  if (req.manifold == "sphere") return sphere(req.n);
  if (req.manifold == "so") return so_n(req.n);
  if (req.manifold == "sasaki_sphere_tangent" || req.manifold == "sasaki")
    return sasaki_sphere_tangent(req.n);
  if (req.manifold == "stiefel") return stiefel(req.n, req.p, req.alpha);
  if (req.manifold == "flag") return flag(req.n, req.partition);
  if (req.manifold == "grassmann") return grassmann(req.n, req.p);
  throw InvalidParameter("unknown manifold: " + req.manifold);
}

}  // namespace riemann::manifolds

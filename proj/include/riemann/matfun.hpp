#pragma once

#include "riemann/core.hpp"

#include <cmath>

namespace riemann::matfun {

// Dense square-matrix functions used by the closed-form geodesic and Jacobi
// machinery: exp, and the entire continuations csr z ~ cos sqrt(z),
// ssr z ~ sin(sqrt z)/sqrt(z), together with their Frechet derivatives.

enum class Fn { exp, csr, ssr };

inline void require_square(const Mat& a, const char* who) {
  if (a.rows() == 0 || a.cols() == 0)
    throw InvalidInput(std::string(who) + ": dimension zero");
  if (a.rows() != a.cols())
    throw InvalidInput(std::string(who) + ": matrix not square");
  if (!all_finite(a))
    throw InvalidInput(std::string(who) + ": non-finite entries");
}

inline void require_same_dim(const Mat& a, const Mat& e, const char* who) {
  if (a.rows() != e.rows() || a.cols() != e.cols())
    throw InvalidInput(std::string(who) + ": dimension mismatch");
}

// Matrix exponential by scaling and squaring. The argument is halved until
// its 1-norm drops below 0.5, a 30-term Taylor sum is taken, and the result
// squared back up. Adequate and robust at the dense desk-scale sizes used
// here (n <= 50).
inline Mat expm(const Mat& a) {
  require_square(a, "expm");
  const int n = static_cast<int>(a.rows());
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int s = 0;
  double scaled = norm1;
  while (scaled > 0.5 && s < 64) {
    scaled *= 0.5;
    ++s;
  }
  const Mat b = a / std::ldexp(1.0, s);
  Mat result = Mat::Identity(n, n);
  Mat term = Mat::Identity(n, n);
  for (int k = 1; k <= 30; ++k) {
    term = (term * b) / static_cast<double>(k);
    result += term;
  }
  for (int i = 0; i < s; ++i) result = result * result;
  return result;
}

struct CsrSsrJet {
  Mat c;   // csr(A)
  Mat s;   // ssr(A)
  Mat cp;  // csr'(A)
  Mat sp;  // ssr'(A)
};

// Joint evaluation of csr, ssr and their derivatives. Taylor sums after
// scaling A by 4^-s, then the quadruple-angle recurrences
//   csr(4z) = 2 csr(z)^2 - 1,        ssr(4z)  = ssr(z) csr(z),
//   csr'(4z) = csr'(z) csr(z),       ssr'(4z) = (ssr'(z) csr(z) + ssr(z) csr'(z)) / 4
// restore the original argument. (These restate the cosine/sine double-angle
// identities for the z = t^2 parametrization.)
inline CsrSsrJet csr_ssr_jet(const Mat& a) {
  require_square(a, "csr/ssr");
  const int n = static_cast<int>(a.rows());
  const double norm = a.norm();
  int s = 0;
  double scaled = norm;
  while (scaled > 1.0 && s < 48) {
    scaled *= 0.25;
    ++s;
  }
  const Mat b = a / std::pow(4.0, s);

  const Mat id = Mat::Identity(n, n);
  Mat c = id, ss = id, cp = Mat::Zero(n, n), sp = Mat::Zero(n, n);
  Mat pow = id;  // b^(k-1) entering iteration k
  double f2k = 1.0;   // (2k)!
  double f2k1 = 1.0;  // (2k+1)!
  for (int k = 1; k <= 32; ++k) {
    f2k *= (2.0 * k - 1.0) * (2.0 * k);
    f2k1 *= (2.0 * k) * (2.0 * k + 1.0);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    cp += (sign * k / f2k) * pow;
    sp += (sign * k / f2k1) * pow;
    pow = pow * b;
    c += (sign / f2k) * pow;
    ss += (sign / f2k1) * pow;
  }
  for (int i = 0; i < s; ++i) {
    const Mat c_new = 2.0 * c * c - id;
    const Mat s_new = ss * c;
    const Mat cp_new = cp * c;
    const Mat sp_new = 0.25 * (sp * c + ss * cp);
    c = c_new;
    ss = s_new;
    cp = cp_new;
    sp = sp_new;
  }
  return {c, ss, cp, sp};
}

inline Mat csr(const Mat& a) { return csr_ssr_jet(a).c; }
inline Mat ssr(const Mat& a) { return csr_ssr_jet(a).s; }

inline Mat eval(Fn f, const Mat& a) {
  switch (f) {
    case Fn::exp: return expm(a);
    case Fn::csr: return csr_ssr_jet(a).c;
    case Fn::ssr: return csr_ssr_jet(a).s;
  }
  throw InvalidInput("eval: unknown function id");
}

// f' as a matrix function: exp' = exp, csr' = -ssr/2, ssr' from its series.
inline Mat eval_derivative(Fn f, const Mat& a) {
  switch (f) {
    case Fn::exp: return expm(a);
    case Fn::csr: return -0.5 * csr_ssr_jet(a).s;
    case Fn::ssr: return csr_ssr_jet(a).sp;
  }
  throw InvalidInput("eval_derivative: unknown function id");
}

namespace detail {

inline Mat block_embed(const Mat& a, const Mat& e) {
  const int n = static_cast<int>(a.rows());
  Mat big = Mat::Zero(2 * n, 2 * n);
  big.topLeftCorner(n, n) = a;
  big.topRightCorner(n, n) = e;
  big.bottomRightCorner(n, n) = a;
  return big;
}

inline Mat upper_right(const Mat& big) {
  const int n = static_cast<int>(big.rows()) / 2;
  return big.topRightCorner(n, n);
}

}  // namespace detail

// Frechet derivative L_f(A, E) via the block trick: the upper-right block of
// f([[A, E], [0, A]]).
inline Mat frechet(Fn f, const Mat& a, const Mat& e) {
  require_square(a, "frechet");
  require_square(e, "frechet");
  require_same_dim(a, e, "frechet");
  return detail::upper_right(eval(f, detail::block_embed(a, e)));
}

// Frechet derivative of the derivative function f'.
inline Mat frechet_of_derivative(Fn f, const Mat& a, const Mat& e) {
  require_square(a, "frechet_of_derivative");
  require_same_dim(a, e, "frechet_of_derivative");
  switch (f) {
    case Fn::exp: return frechet(Fn::exp, a, e);
    case Fn::csr: return -0.5 * frechet(Fn::ssr, a, e);
    case Fn::ssr: return detail::upper_right(csr_ssr_jet(detail::block_embed(a, e)).sp);
  }
  throw InvalidInput("frechet_of_derivative: unknown function id");
}

// d/dt L_f(tA, tE) = A L_{f'}(tA, tE) + E f'(tA).
inline Mat frechet_time_derivative(Fn f, const Mat& a, const Mat& e, double t) {
  require_square(a, "frechet_time_derivative");
  require_square(e, "frechet_time_derivative");
  require_same_dim(a, e, "frechet_time_derivative");
  const Mat ta = t * a;
  const Mat te = t * e;
  return a * frechet_of_derivative(f, ta, te) + e * eval_derivative(f, ta);
}

}  // namespace riemann::matfun

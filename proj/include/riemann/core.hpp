#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

namespace riemann {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr const char* kVersion = "0.1.0";

// ---------------------------------------------------------------------------
// Error taxonomy. Every failure mode raised by the library derives from
// Error so callers can catch the whole family or a specific kind.
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class SingularSpan : public Error {
 public:
  using Error::Error;
};

class OffManifold : public Error {
 public:
  using Error::Error;
};

class IncompleteStructure : public Error {
 public:
  using Error::Error;
};

class DegenerateTangentSpace : public Error {
 public:
  using Error::Error;
};

class NonHorizontal : public Error {
 public:
  using Error::Error;
};

class IntegrationFailure : public Error {
 public:
  using Error::Error;
};

class InvalidMetric : public Error {
 public:
  using Error::Error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Ambient space: a real coordinate space of dimension dim, optionally carrying
// a matrix shape rows x cols with rows*cols == dim. Points and tangents are
// plain coordinate vectors; the shape is used to view them as matrices.
// ---------------------------------------------------------------------------

struct AmbientSpace {
  int dim = 0;
  int rows = 0;
  int cols = 0;

  static AmbientSpace vector_space(int n) {
    if (n <= 0) throw InvalidInput("ambient dimension must be positive");
    return AmbientSpace{n, 0, 0};
  }

  static AmbientSpace matrix_space(int r, int c) {
    if (r <= 0 || c <= 0) throw InvalidInput("matrix shape must be positive");
    return AmbientSpace{r * c, r, c};
  }

  bool has_shape() const { return rows > 0 && cols > 0; }
};

// Column-stacked matrix view of an ambient coordinate vector.
inline Mat unvec(const AmbientSpace& space, const Vec& w) {
  if (!space.has_shape()) throw InvalidInput("ambient space carries no matrix shape");
  if (w.size() != space.dim) throw InvalidInput("coordinate size does not match ambient dim");
  return Eigen::Map<const Mat>(w.data(), space.rows, space.cols);
}

inline Mat unvec(int rows, int cols, const Vec& w) {
  if (w.size() != static_cast<Eigen::Index>(rows) * cols)
    throw InvalidInput("coordinate size does not match requested shape");
  return Eigen::Map<const Mat>(w.data(), rows, cols);
}

inline Vec vec(const Mat& m) {
  return Eigen::Map<const Vec>(m.data(), m.size());
}

inline bool all_finite(const Mat& m) { return m.allFinite(); }

// ---------------------------------------------------------------------------
// Seeded random source. Gaussians come from an explicit Box-Muller transform
// on the raw engine output so streams are identical across standard libraries.
// ---------------------------------------------------------------------------

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  Vec gaussian_vec(int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = gaussian();
    return v;
  }

  Mat gaussian_mat(int r, int c) {
    Mat m(r, c);
    for (int j = 0; j < c; ++j)
      for (int i = 0; i < r; ++i) m(i, j) = gaussian();
    return m;
  }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

inline Mat sym(const Mat& a) { return 0.5 * (a + a.transpose()); }
inline Mat skew(const Mat& a) { return 0.5 * (a - a.transpose()); }

}  // namespace riemann

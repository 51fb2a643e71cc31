#include "regcoreset/random.hpp"

#include "regcoreset/error.hpp"

#include <cmath>
#include <numbers>

namespace regcoreset {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t parent, std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = mix64(parent);
  for (std::uint64_t index : path) h = mix64(h ^ mix64(index + 0x632be59bd9b4e019ULL));
  return h;
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform_open() {
  double u;
  do {
    u = uniform();
  } while (u == 0.0);
  return u;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Marsaglia polar method.
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * factor;
  has_spare_ = true;
  return u * factor;
}

double Rng::cauchy() {
  return std::tan(std::numbers::pi * (uniform_open() - 0.5));
}

double Rng::symmetric_stable(double alpha) {
  require(alpha > 0.0 && alpha <= 2.0, ErrorKind::invalid_parameter,
          "stability index must lie in (0, 2]");
  if (alpha == 1.0) return cauchy();
  const double theta = std::numbers::pi * (uniform_open() - 0.5);
  const double w = -std::log(uniform_open());
  return std::sin(alpha * theta) / std::pow(std::cos(theta), 1.0 / alpha) *
         std::pow(std::cos((1.0 - alpha) * theta) / w, (1.0 - alpha) / alpha);
}

Vector Rng::normal_vector(Eigen::Index size) {
  Vector v(size);
  for (Eigen::Index i = 0; i < size; ++i) v(i) = normal();
  return v;
}

Matrix Rng::normal_matrix(Eigen::Index rows, Eigen::Index cols) {
  // Fill in row-major order so the stream maps onto entries the way it reads.
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = normal();
  return m;
}

}  // namespace regcoreset

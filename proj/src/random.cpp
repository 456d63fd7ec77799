#include "licurv/random.hpp"

namespace licurv {

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Vector random_gaussian(int n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = normal(rng);
  return v;
}

Matrix random_rotation(int n, Rng& rng) {
  Matrix g(n, n);
  for (int j = 0; j < n; ++j) g.col(j) = random_gaussian(n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  if (q.determinant() < 0.0) q.col(0) *= -1.0;
  return q;
}

Matrix random_spd(int n, Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> uniform(lo, hi);
  const Matrix q = random_rotation(n, rng);
  Vector d(n);
  for (int i = 0; i < n; ++i) d[i] = uniform(rng);
  Matrix m = q * d.asDiagonal() * q.transpose();
  return 0.5 * (m + m.transpose());
}

}  // namespace licurv

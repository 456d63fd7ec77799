#pragma once

#include <cmath>
#include <vector>

#include "licurv/lie_algebra.hpp"
#include "licurv/metric.hpp"
#include "oracle.hpp"

namespace testing_support {

inline oracle::Vec to_vec(const licurv::Vector& v) { return oracle::Vec(v.data(), v.data() + v.size()); }

inline licurv::Vector from_list(std::initializer_list<double> values) {
  licurv::Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

inline oracle::Mat to_mat(const licurv::Matrix& m) {
  oracle::Mat out(static_cast<size_t>(m.rows()), oracle::Vec(static_cast<size_t>(m.cols())));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

inline oracle::Structure structure_of(const licurv::LieAlgebra& alg) {
  return [&alg](int i, int j, int k) { return alg.c(i, j, k); };
}

inline oracle::KoszulCurvature koszul(const licurv::LeftInvariantMetric& m) {
  return oracle::KoszulCurvature(structure_of(m.algebra()), to_mat(m.phi()));
}

inline double max_abs(const licurv::Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace testing_support

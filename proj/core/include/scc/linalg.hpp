#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

namespace scc {

/// Half-dimension cap: everything in this library is desk scale (n <= 8, so
/// matrices are at most 16x16).  Fixed max sizes keep Eigen storage on the
/// stack in the quadrature inner loops.
inline constexpr int kMaxDim = 16;

using RMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;
using CMat = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;
using RVec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
using IMat = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;
using IMat2 = Eigen::Matrix<std::int64_t, 2, 2>;

using Complex = std::complex<double>;

/// Compensated (Kahan) accumulator; keeps long deterministic sums accurate.
class KahanSum {
  public:
    void add(double x) {
        const double y = x - comp_;
        const double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace scc

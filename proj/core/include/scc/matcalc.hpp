#pragma once

#include <functional>
#include <vector>

#include "scc/errors.hpp"
#include "scc/linalg.hpp"

namespace scc {

/// Largest singular value.
double operator_norm(const CMat& a);
double operator_norm(const RMat& a);

/// tr ln(1+Z) = sum_j ln(1 + lambda_j(Z)) with the principal scalar logarithm.
/// Requires operator_norm(Z) < 1; then |Im ln(1+lambda)| < pi/2 per eigenvalue.
Complex tr_log_one_plus(const CMat& z);

/// Series oracle: trace of the partial sums of sum (-1)^{k+1} Z^k / k,
/// truncated once |Z|^k / k < tol.  Independent of the eigenvalue route.
Complex tr_log_series(const CMat& z, double tol);

/// Samples of a continuous nonzero complex path; consecutive samples must
/// differ in argument by < pi/2 or lifting refuses with refinement_required.
struct ArgPath {
    std::vector<Complex> samples;
};

/// Endpoint of the unique continuous argument lift along the path, starting
/// at start_value (which must equal arg(samples.front()) mod 2pi).
double continuous_arg_lift(const ArgPath& path, double start_value);

/// Adaptive driver: lifts arg(f(t)) along [t0, t1] starting from
/// arg(f(t0)), bisecting any step whose argument jump reaches pi/2.
/// Returns (endpoint lift) - (arg of f(t0) principal value).... see below.
struct LiftResult {
    double start_arg;  // principal argument of f(t0)
    double end_lift;   // continuous lift value at t1 (anchored at start_arg)
};
LiftResult lift_along(const std::function<Complex(double)>& f, double t0, double t1,
                      int initial_samples);

enum class Branch { upper_half_plane, principal };

/// w^{-alpha} = |w|^{-alpha} exp(-i alpha arg w) with arg in (0, pi) for the
/// upper-half-plane branch and (-pi, pi] for the principal branch.
Complex principal_power(Complex w, double alpha, Branch branch);

}  // namespace scc

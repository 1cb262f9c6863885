#include "scc/matcalc.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <numbers>

namespace scc {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kJumpLimit = kPi / 2;
}  // namespace

double operator_norm(const CMat& a) {
    if (!a.allFinite()) throw invalid_input("operator_norm: non-finite entries");
    if (a.rows() == 1 && a.cols() == 1) return std::abs(a(0, 0));
    Eigen::JacobiSVD<CMat> svd(a);
    return svd.singularValues()(0);
}

double operator_norm(const RMat& a) {
    if (!a.allFinite()) throw invalid_input("operator_norm: non-finite entries");
    if (a.rows() == 1 && a.cols() == 1) return std::abs(a(0, 0));
    Eigen::JacobiSVD<RMat> svd(a);
    return svd.singularValues()(0);
}

Complex tr_log_one_plus(const CMat& z) {
    if (z.rows() != z.cols()) throw invalid_input("tr_log_one_plus: matrix must be square");
    if (z.rows() == 1) {
        const Complex w = z(0, 0);
        if (std::abs(w) >= 1.0) throw domain_violation("tr_log_one_plus: |Z| >= 1");
        return std::log(Complex(1.0) + w);
    }
    if (operator_norm(z) >= 1.0) throw domain_violation("tr_log_one_plus: |Z| >= 1");
    Eigen::ComplexEigenSolver<CMat> es(z, /*computeEigenvectors=*/false);
    Complex sum = 0.0;
    for (int j = 0; j < z.rows(); ++j) sum += std::log(Complex(1.0) + es.eigenvalues()(j));
    return sum;
}

Complex tr_log_series(const CMat& z, double tol) {
    if (tol <= 0.0) throw invalid_input("tr_log_series: tol must be positive");
    if (z.rows() != z.cols()) throw invalid_input("tr_log_series: matrix must be square");
    const double nrm = operator_norm(z);
    if (nrm >= 1.0) throw domain_violation("tr_log_series: |Z| >= 1");
    CMat power = z;
    Complex sum = 0.0;
    double bound = nrm;
    double sign = 1.0;
    for (int k = 1; k < 100000; ++k) {
        sum += sign * power.trace() / static_cast<double>(k);
        if (bound / (k + 1) < tol) break;
        power = CMat(power * z);
        bound *= nrm;
        sign = -sign;
    }
    return sum;
}

double continuous_arg_lift(const ArgPath& path, double start_value) {
    if (path.samples.empty()) throw invalid_input("continuous_arg_lift: empty path");
    const Complex first = path.samples.front();
    if (first == Complex(0.0)) throw invalid_input("continuous_arg_lift: zero sample");
    // start_value must represent arg(first) mod 2pi
    const double rep = std::arg(first);
    const double diff = std::remainder(start_value - rep, 2 * kPi);
    if (std::abs(diff) > 1e-6)
        throw invalid_input("continuous_arg_lift: start_value not congruent to arg(first)");
    double lift = start_value;
    double prev = rep;
    for (std::size_t i = 1; i < path.samples.size(); ++i) {
        const Complex w = path.samples[i];
        if (w == Complex(0.0)) throw invalid_input("continuous_arg_lift: zero sample");
        const double cur = std::arg(w);
        double step = std::remainder(cur - prev, 2 * kPi);
        if (std::abs(step) >= kJumpLimit)
            throw refinement_required("continuous_arg_lift: argument jump >= pi/2");
        lift += step;
        prev = cur;
    }
    return lift;
}

namespace {

// Recursive bisection between two parameters until the wrapped step is < pi/2.
double lift_step(const std::function<Complex(double)>& f, double t0, Complex w0, double t1,
                 Complex w1, int depth) {
    const double step = std::remainder(std::arg(w1) - std::arg(w0), 2 * kPi);
    if (std::abs(step) < kJumpLimit * 0.999) return step;
    if (depth <= 0) throw refinement_required("lift_along: path refinement exhausted");
    const double tm = 0.5 * (t0 + t1);
    const Complex wm = f(tm);
    if (wm == Complex(0.0)) throw invalid_input("lift_along: path through zero");
    return lift_step(f, t0, w0, tm, wm, depth - 1) + lift_step(f, tm, wm, t1, w1, depth - 1);
}

}  // namespace

LiftResult lift_along(const std::function<Complex(double)>& f, double t0, double t1,
                      int initial_samples) {
    if (initial_samples < 1) throw invalid_input("lift_along: need at least one sample");
    Complex prev = f(t0);
    if (prev == Complex(0.0)) throw invalid_input("lift_along: path through zero");
    const double start = std::arg(prev);
    double lift = start;
    double tprev = t0;
    for (int k = 1; k <= initial_samples; ++k) {
        const double t = t0 + (t1 - t0) * k / initial_samples;
        const Complex w = f(t);
        if (w == Complex(0.0)) throw invalid_input("lift_along: path through zero");
        lift += lift_step(f, tprev, prev, t, w, 48);
        tprev = t;
        prev = w;
    }
    return {start, lift};
}

Complex principal_power(Complex w, double alpha, Branch branch) {
    if (w == Complex(0.0)) throw domain_violation("principal_power: w == 0");
    double theta = std::arg(w);  // (-pi, pi]
    if (branch == Branch::upper_half_plane) {
        if (theta <= 0.0 || theta >= kPi)
            throw domain_violation("principal_power: w not in the open upper half plane");
    }
    return std::pow(std::abs(w), -alpha) * std::polar(1.0, -alpha * theta);
}

}  // namespace scc

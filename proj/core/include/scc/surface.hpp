#pragma once

#include <array>
#include <vector>

#include "scc/currents.hpp"

namespace scc {

/// Fixed smooth twist profile: nu(x) = 2 pi s(2x) with
/// s(x) = sig(x) / (sig(x) + sig(1-x)), sig(x) = exp(-1/x) for x > 0 else 0.
/// nu = 0 on (-inf, 0], nu = 2 pi on [1/2, inf), C^infty and nondecreasing.
double nu_profile(double x);
double nu_profile_deriv(double x);

enum class TwistOrientation { right, left };

/// A standard epsilon-twist about the circle |m - center| = base_radius:
/// (r, phi) -> (r, phi +- nu((r/R - 1)/eps)); identity outside
/// R < r < R(1 + eps/2).  The canonical isotopy scales the profile by s.
struct TwistSpec {
    double center_x = 0.0;
    double center_y = 0.0;
    double base_radius = 0.5;
    double eps = 0.1;
    TwistOrientation orientation = TwistOrientation::right;
};

/// Builds the twist as a disk map with exact polar Jacobian.  Evaluation
/// outside the disk of domain_radius throws domain_violation.
SympMap epsilon_twist(const TwistSpec& spec, double domain_radius);

struct TrackingOptions {
    int initial_samples = 1024;  // dense enough that no step can hide a winding
};

/// Global turning angle Ang(q, x, v): the continuous lift of the rotation of
/// the image of v under the Jacobian, tracked along a radial curve from a
/// boundary point fixed by q (and a final rotation of v into place).  Reduces
/// mod 2pi to the pointwise Jacobian rotation angle.
double turning_angle(const SympMap& q, double x0, double x1, double v0, double v1,
                     const TrackingOptions& opts = {});

/// A piecewise-smooth curve with closed-form position and velocity.
struct CurveSample {
    std::function<RVec(double)> pos;   // t in [0, 1]
    std::function<RVec(double)> vel;
    int initial_samples = 2048;

    static CurveSample segment(double ax, double ay, double bx, double by,
                               int samples = 2048);
};

struct IntegrationOptions {
    double rel_tol = 1e-6;
    int max_doublings = 8;
};

/// Flux: tau(q) = int_u lambda - int_{q o u} lambda with
/// lambda = (x dy - y dx)/2, by composite trapezoid with refinement doubling.
double flux_tau(const SympMap& q, const CurveSample& u, const IntegrationOptions& opts = {});

/// Calabi invariant: reconstructs F with q*lambda - lambda = dF, F = 0 on the
/// outer boundary, by cumulative radial line integrals along the rays of the
/// polar grid, then integrates F.  A ball of radius 1e-6 around the center is
/// excluded from the reconstruction paths.
double calabi(const SympMap& q, const QuadratureGrid& polar_grid,
              const IntegrationOptions& opts = {});

struct HoleSpec {
    double center_x = 0.0;
    double center_y = 0.0;
    double radius = 0.05;
};

struct AffineFit {
    double intercept = 0.0;
    double slope = 0.0;
};
AffineFit fit_affine(const std::vector<double>& x, const std::vector<double>& y);

struct TwistReportRow {
    double eps;
    double gamma;
    std::vector<double> taus;
    double calabi;
};

struct TwistReport {
    std::vector<TwistReportRow> rows;
    AffineFit gamma_fit;
    std::vector<AffineFit> tau_fits;
    AffineFit calabi_fit;
};

struct TwistReportOptions {
    double domain_radius = 1.0;
    int grid_n_r = 1024;
    int grid_n_phi = 32;
    LiftOptions lift;
    IntegrationOptions integration;
};

/// Rows of (eps, Gamma, tau_j..., kappa) for the given spec at each eps in
/// (0, 1/4], plus affine fits per column.
TwistReport twist_report(const TwistSpec& base, const std::vector<double>& eps_list,
                         const std::vector<HoleSpec>& holes,
                         const TwistReportOptions& opts = {});

/// The lantern linear combination
///   -H + 2 pi (sum sV - sum sW) + sum_j a_j (sV0 + sVj - ...) + b (sum sV^2 - sum sW^2)
/// evaluated at user-supplied curve areas; exhibits the area dependence that
/// drives the nontriviality argument.
double lantern_combination(const std::array<double, 4>& sigma_v,
                           const std::array<double, 3>& sigma_w,
                           const std::array<double, 3>& a, double b, double h);

}  // namespace scc

#include "scc/surface.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "scc/matcalc.hpp"

namespace scc {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kCenterExclusion = 1e-6;

double sig(double x) { return x > 1e-8 ? std::exp(-1.0 / x) : 0.0; }
double dsig(double x) { return x > 1e-8 ? std::exp(-1.0 / x) / (x * x) : 0.0; }
}  // namespace

double nu_profile(double x) {
    const double t = 2.0 * x;
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 2 * kPi;
    const double a = sig(t), b = sig(1.0 - t);
    return 2 * kPi * a / (a + b);
}

double nu_profile_deriv(double x) {
    const double t = 2.0 * x;
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double a = sig(t), b = sig(1.0 - t);
    const double da = dsig(t), db = dsig(1.0 - t);
    const double denom = (a + b) * (a + b);
    return 4 * kPi * (da * b + a * db) / denom;
}

SympMap epsilon_twist(const TwistSpec& spec, double domain_radius) {
    if (!(spec.eps > 0.0 && spec.eps < 0.5)) throw invalid_input("epsilon_twist: need 0 < eps < 1/2");
    if (spec.base_radius <= 0.0) throw invalid_input("epsilon_twist: base radius must be positive");
    const double cdist = std::hypot(spec.center_x, spec.center_y);
    const double outer = spec.base_radius * (1.0 + spec.eps / 2.0);
    if (cdist + outer >= domain_radius)
        throw invalid_input("epsilon_twist: support does not fit inside the disk");

    const double cx = spec.center_x, cy = spec.center_y;
    const double R0 = spec.base_radius, eps = spec.eps;
    const double orient = spec.orientation == TwistOrientation::right ? 1.0 : -1.0;
    const double RL = domain_radius;

    auto check_inside = [RL](const RVec& m) {
        if (m.size() != 2) throw invalid_input("epsilon_twist: planar point expected");
        if (std::hypot(m(0), m(1)) > RL * (1.0 + 1e-12))
            throw domain_violation("epsilon_twist: evaluation outside the disk");
    };

    // The closed-form family is defined on the whole plane; only the public
    // time-1 map enforces the disk domain.  Intermediate isotopy maps sweep
    // exterior points on circles about the twist center, which may leave the
    // disk even though the time-1 map preserves it.
    auto point_at = [cx, cy, R0, eps, orient](double s, const RVec& m) {
        const double dx = m(0) - cx, dy = m(1) - cy;
        const double r = std::hypot(dx, dy);
        RVec y(2);
        if (r < 1e-300) {
            y = m;
            return y;
        }
        const double th = s * orient * nu_profile((r / R0 - 1.0) / eps);
        const double co = std::cos(th), si = std::sin(th);
        y(0) = cx + co * dx - si * dy;
        y(1) = cy + si * dx + co * dy;
        return y;
    };

    auto jacobian_at = [cx, cy, R0, eps, orient](double s, const RVec& m) {
        const double dx = m(0) - cx, dy = m(1) - cy;
        const double r = std::hypot(dx, dy);
        RMat jac = RMat::Identity(2, 2);
        if (r < 1e-300) return jac;
        const double u = (r / R0 - 1.0) / eps;
        const double th = s * orient * nu_profile(u);
        const double dth = s * orient * nu_profile_deriv(u) / (R0 * eps);
        const double co = std::cos(th), si = std::sin(th);
        const double cp = dx / r, sp = dy / r;
        const double phi = std::atan2(dy, dx);
        const double cT = std::cos(phi + th), sT = std::sin(phi + th);
        jac(0, 0) = co - r * dth * sT * cp;
        jac(0, 1) = -si - r * dth * sT * sp;
        jac(1, 0) = si + r * dth * cT * cp;
        jac(1, 1) = co + r * dth * cT * sp;
        return jac;
    };

    SympMap q;
    q.domain = Domain{DomainKind::disk, 2, domain_radius};
    q.point = [point_at, check_inside](const RVec& m) {
        check_inside(m);
        return point_at(1.0, m);
    };
    q.jacobian = [jacobian_at, check_inside](const RVec& m) {
        check_inside(m);
        return jacobian_at(1.0, m);
    };
    q.has_isotopy = true;
    q.point_at = point_at;
    q.jacobian_at = jacobian_at;
    // Phi(q_s'(m)) = e^{-i theta_s(r)} (1 - i r theta_s'(r)/2), so the
    // continuous branch of its argument is available in closed form.
    q.phase_lift = [cx, cy, R0, eps, orient](double s, const RVec& m) {
        const double r = std::hypot(m(0) - cx, m(1) - cy);
        if (r < 1e-300) return 0.0;
        const double u = (r / R0 - 1.0) / eps;
        const double theta = s * orient * nu_profile(u);
        const double rdth = s * orient * r * nu_profile_deriv(u) / (R0 * eps);
        return -theta + std::atan2(-rdth, 2.0);
    };
    q.support_radius = cdist + outer;
    // Direction transport in complex form: q'(m) w = e^{i theta} [(1 + ia) w
    // + i a e^{2 i phi} conj(w)], a = r theta'/2.  The bracket relative to w
    // has imaginary part 2 a cos^2(phi - arg w), so it never meets the
    // negative real axis and its principal argument is continuous.
    q.turn_lift = [cx, cy, R0, eps, orient](const RVec& m, Complex w) {
        const double dx = m(0) - cx, dy = m(1) - cy;
        const double r = std::hypot(dx, dy);
        if (r < 1e-300) return 0.0;
        const double u = (r / R0 - 1.0) / eps;
        const double theta = orient * nu_profile(u);
        const double a = orient * r * nu_profile_deriv(u) / (R0 * eps) / 2.0;
        const Complex e2iphi(((dx * dx - dy * dy) / (r * r)), (2 * dx * dy / (r * r)));
        const Complex wn = w / std::abs(w);
        const Complex ratio = Complex(1.0, 0.0) +
                              Complex(0.0, a) * (Complex(1.0, 0.0) + e2iphi * std::conj(wn) * std::conj(wn));
        return theta + std::arg(ratio);
    };
    return q;
}

double turning_angle(const SympMap& q, double x0, double x1, double v0, double v1,
                     const TrackingOptions& opts) {
    if (q.domain.kind != DomainKind::disk)
        throw invalid_input("turning_angle: planar maps only");
    const double vnorm = std::hypot(v0, v1);
    if (vnorm < 1e-14) throw invalid_input("turning_angle: zero direction vector");
    v0 /= vnorm;
    v1 /= vnorm;

    // boundary anchor on the ray through x, fixed by q
    const double RL = q.domain.radius;
    const double xr = std::hypot(x0, x1);
    double dx = 1.0, dy = 0.0;
    if (xr > 1e-12) {
        dx = x0 / xr;
        dy = x1 / xr;
    }
    RVec z0(2);
    z0(0) = 0.985 * RL * dx;
    z0(1) = 0.985 * RL * dy;
    if ((q.point(z0) - z0).norm() > 1e-9 * (1.0 + RL))
        throw invalid_input("turning_angle: tracking anchor is not fixed by q");

    RVec x(2);
    x(0) = x0;
    x(1) = x1;
    if (q.turn_lift) {
        // exact continuous representative, anchored at the fixed boundary point
        return q.turn_lift(x, Complex(v0, v1)) - q.turn_lift(z0, Complex(v0, v1));
    }
    const double psi_u = std::atan2(x1 - z0(1), x0 - z0(0));
    const double ux = std::cos(psi_u), uy = std::sin(psi_u);
    const double psi_v = std::atan2(v1, v0);
    const double dpsi = std::remainder(psi_v - psi_u, 2 * kPi);

    const auto path = [&](double t) -> Complex {
        if (t <= 1.0) {
            RVec p(2);
            p(0) = z0(0) + t * (x0 - z0(0));
            p(1) = z0(1) + t * (x1 - z0(1));
            const RMat j = q.jacobian(p);
            return Complex(j(0, 0) * ux + j(0, 1) * uy, j(1, 0) * ux + j(1, 1) * uy);
        }
        const double psi = psi_u + (t - 1.0) * dpsi;
        const double wx = std::cos(psi), wy = std::sin(psi);
        const RMat j = q.jacobian(x);
        return Complex(j(0, 0) * wx + j(0, 1) * wy, j(1, 0) * wx + j(1, 1) * wy);
    };

    const LiftResult lr = lift_along(path, 0.0, 2.0, opts.initial_samples);
    return (lr.end_lift - lr.start_arg) - dpsi;
}

CurveSample CurveSample::segment(double ax, double ay, double bx, double by, int samples) {
    CurveSample c;
    c.initial_samples = samples;
    c.pos = [ax, ay, bx, by](double t) {
        RVec p(2);
        p(0) = ax + t * (bx - ax);
        p(1) = ay + t * (by - ay);
        return p;
    };
    c.vel = [ax, ay, bx, by](double) {
        RVec v(2);
        v(0) = bx - ax;
        v(1) = by - ay;
        return v;
    };
    return c;
}

namespace {

double lambda_form(const RVec& p, const RVec& w) { return 0.5 * (p(0) * w(1) - p(1) * w(0)); }

// trapezoid of the flux integrand at n+1 samples
double flux_value(const SympMap& q, const CurveSample& u, int n) {
    const double RL = q.domain.radius;
    KahanSum acc;
    double prev = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double t = static_cast<double>(k) / n;
        const RVec p = u.pos(t);
        if (std::hypot(p(0), p(1)) > RL * (1.0 + 1e-12))
            throw invalid_input("flux_tau: curve leaves the domain");
        const RVec v = u.vel(t);
        const RVec qp = q.point(p);
        const RVec qv = q.jacobian(p) * v;
        const double f = lambda_form(p, v) - lambda_form(qp, qv);
        if (k > 0) acc.add(0.5 * (prev + f) / n);
        prev = f;
    }
    return acc.value();
}

}  // namespace

double flux_tau(const SympMap& q, const CurveSample& u, const IntegrationOptions& opts) {
    if (q.domain.kind != DomainKind::disk) throw invalid_input("flux_tau: planar maps only");
    int n = std::max(u.initial_samples, 16);
    double val = flux_value(q, u, n);
    for (int d = 0; d < opts.max_doublings; ++d) {
        n *= 2;
        const double next = flux_value(q, u, n);
        const double change = std::abs(next - val);
        val = next;
        if (change <= opts.rel_tol * std::max(1.0, std::abs(val))) break;
    }
    return val;
}

namespace {

// F along one polar ray, evaluated at the node radii (descending), by
// cumulative trapezoid from the outer boundary with sub-steps between nodes.
std::vector<double> ray_potential(const SympMap& q, double phi, const std::vector<double>& node_r,
                                  double RL, int substeps_per_unit) {
    const double cphi = std::cos(phi), sphi = std::sin(phi);
    RVec rhat(2);
    rhat(0) = cphi;
    rhat(1) = sphi;
    auto integrand = [&](double r) {
        RVec p(2);
        p(0) = r * cphi;
        p(1) = r * sphi;
        const RVec qp = q.point(p);
        const RVec qv = q.jacobian(p) * rhat;
        return lambda_form(qp, qv) - lambda_form(p, rhat);
    };
    std::vector<double> out(node_r.size());
    double r_hi = RL;
    double f_hi = integrand(r_hi);
    double acc = 0.0;  // F(r) = int_{RL}^{r} integrand
    for (std::size_t i = 0; i < node_r.size(); ++i) {
        const double r_lo = std::max(node_r[i], kCenterExclusion);
        const int steps = std::max(1, static_cast<int>(std::ceil((r_hi - r_lo) * substeps_per_unit)));
        for (int k = 1; k <= steps; ++k) {
            const double r = r_hi + (r_lo - r_hi) * k / steps;
            const double f = integrand(r);
            acc += 0.5 * (f_hi + f) * (r - r_hi);  // dr < 0 going inward
            f_hi = f;
            r_hi = r;
        }
        out[i] = acc;
    }
    return out;
}

double calabi_value(const SympMap& q, const QuadratureGrid& grid, int substeps_per_unit) {
    const int n_r = grid.resolution()[0];
    const int n_phi = grid.resolution()[1];
    const double RL = grid.domain().radius;
    std::vector<double> node_r(n_r);
    for (int i = 0; i < n_r; ++i) node_r[i] = (n_r - 1 - i + 0.5) * RL / n_r;  // descending
    KahanSum acc;
    for (int j = 0; j < n_phi; ++j) {
        const double phi = (j + 0.5) * 2 * kPi / n_phi;
        const std::vector<double> F = ray_potential(q, phi, node_r, RL, substeps_per_unit);
        for (int i = 0; i < n_r; ++i) {
            const int ir = n_r - 1 - i;  // node_r[i] corresponds to radial index ir
            acc.add(grid.weight(grid.disk_index(ir, j)) * F[i]);
        }
    }
    return acc.value();
}

}  // namespace

double calabi(const SympMap& q, const QuadratureGrid& grid, const IntegrationOptions& opts) {
    if (q.domain.kind != DomainKind::disk) throw invalid_input("calabi: planar maps only");
    if (grid.domain().kind != DomainKind::disk || !(grid.domain() == q.domain))
        throw invalid_input("calabi: polar grid on the map's disk required");
    int sub = std::max(2048, 4 * grid.resolution()[0]);
    double val = calabi_value(q, grid, sub);
    for (int d = 0; d < opts.max_doublings; ++d) {
        sub *= 2;
        const double next = calabi_value(q, grid, sub);
        const double change = std::abs(next - val);
        val = next;
        if (change <= opts.rel_tol * std::max(1.0, std::abs(val))) break;
    }
    return val;
}

AffineFit fit_affine(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw invalid_input("fit_affine: need >= 2 points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-300) throw invalid_input("fit_affine: degenerate abscissae");
    AffineFit f;
    f.slope = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
    return f;
}

TwistReport twist_report(const TwistSpec& base, const std::vector<double>& eps_list,
                         const std::vector<HoleSpec>& holes, const TwistReportOptions& opts) {
    if (eps_list.empty()) throw invalid_input("twist_report: empty eps list");
    for (double e : eps_list)
        if (!(e > 0.0 && e <= 0.25)) throw invalid_input("twist_report: eps must lie in (0, 1/4]");

    const double RL = opts.domain_radius;
    TwistReport rep;
    for (double e : eps_list) {
        TwistSpec spec = base;
        spec.eps = e;
        const SympMap q = epsilon_twist(spec, RL);
        const QuadratureGrid grid = QuadratureGrid::disk_polar(RL, opts.grid_n_r, opts.grid_n_phi);
        TwistReportRow row;
        row.eps = e;
        row.gamma = gamma_circ(q, grid, opts.lift);
        for (const HoleSpec& hole : holes) {
            const double hd = std::hypot(hole.center_x, hole.center_y);
            double ux = 1.0, uy = 0.0;
            if (hd > 1e-12) {
                ux = hole.center_x / hd;
                uy = hole.center_y / hd;
            } else if (hole.radius <= 0.0) {
                throw invalid_input("twist_report: hole radius must be positive");
            }
            // segment from the outer boundary to the far side of the hole circle
            const CurveSample u = CurveSample::segment(RL * ux, RL * uy,
                                                       (hd + hole.radius) * ux,
                                                       (hd + hole.radius) * uy);
            row.taus.push_back(flux_tau(q, u, opts.integration));
        }
        row.calabi = calabi(q, grid, opts.integration);
        rep.rows.push_back(std::move(row));
    }

    std::vector<double> xs(eps_list.begin(), eps_list.end());
    auto column = [&](auto getter) {
        std::vector<double> ys;
        for (const auto& r : rep.rows) ys.push_back(getter(r));
        return fit_affine(xs, ys);
    };
    rep.gamma_fit = column([](const TwistReportRow& r) { return r.gamma; });
    for (std::size_t j = 0; j < holes.size(); ++j)
        rep.tau_fits.push_back(column([j](const TwistReportRow& r) { return r.taus[j]; }));
    rep.calabi_fit = column([](const TwistReportRow& r) { return r.calabi; });
    return rep;
}

double lantern_combination(const std::array<double, 4>& sv, const std::array<double, 3>& sw,
                           const std::array<double, 3>& a, double b, double h) {
    const double sum_v = sv[0] + sv[1] + sv[2] + sv[3];
    const double sum_w = sw[0] + sw[1] + sw[2];
    double out = -h + 2 * kPi * (sum_v - sum_w);
    out += a[0] * (sv[0] + sv[1] - sw[0] - sw[1]);
    out += a[1] * (sv[0] + sv[2] - sw[1] - sw[2]);
    out += a[2] * (sv[0] + sv[3] - sw[2] - sw[0]);
    double sq_v = 0, sq_w = 0;
    for (double s : sv) sq_v += s * s;
    for (double s : sw) sq_w += s * s;
    out += b * (sq_v - sq_w);
    return out;
}

}  // namespace scc

#include "scc/currents.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "scc/matcalc.hpp"

namespace scc {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kAnchorFraction = 0.985;  // boundary anchor radius / disk radius

double frac01(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f = 0.0;  // guard against x - floor(x) == 1 from rounding
    return f;
}
}  // namespace

double Domain::volume() const {
    return kind == DomainKind::torus ? 1.0 : kPi * radius * radius;
}

QuadratureGrid QuadratureGrid::torus_midpoint(int two_n, int per_axis) {
    if (two_n < 2 || two_n > 16 || two_n % 2 != 0)
        throw invalid_input("torus_midpoint: dimension must be even, 2..16");
    if (per_axis < 1) throw invalid_input("torus_midpoint: resolution must be positive");
    double size_check = 1.0;
    for (int a = 0; a < two_n; ++a) size_check *= per_axis;
    if (size_check > 5e7) throw invalid_input("torus_midpoint: grid too large");
    QuadratureGrid g;
    g.domain_ = Domain{DomainKind::torus, two_n, 1.0};
    g.res_.assign(two_n, per_axis);
    g.size_ = 1;
    for (int a = 0; a < two_n; ++a) g.size_ *= static_cast<std::size_t>(per_axis);
    return g;
}

QuadratureGrid QuadratureGrid::disk_polar(double radius, int n_r, int n_phi) {
    if (radius <= 0.0) throw invalid_input("disk_polar: radius must be positive");
    if (n_r < 1 || n_phi < 1) throw invalid_input("disk_polar: resolution must be positive");
    QuadratureGrid g;
    g.domain_ = Domain{DomainKind::disk, 2, radius};
    g.res_ = {n_r, n_phi};
    g.size_ = static_cast<std::size_t>(n_r) * static_cast<std::size_t>(n_phi);
    return g;
}

RVec QuadratureGrid::node(std::size_t i) const {
    if (domain_.kind == DomainKind::torus) {
        RVec m(domain_.dim);
        std::size_t rest = i;
        for (int a = domain_.dim - 1; a >= 0; --a) {
            const int n = res_[a];
            m(a) = (static_cast<double>(rest % n) + 0.5) / n;
            rest /= n;
        }
        return m;
    }
    const int n_phi = res_[1];
    const int ir = static_cast<int>(i / n_phi);
    const int ip = static_cast<int>(i % n_phi);
    const double r = (ir + 0.5) * domain_.radius / res_[0];
    const double phi = (ip + 0.5) * 2 * kPi / n_phi;
    RVec m(2);
    m(0) = r * std::cos(phi);
    m(1) = r * std::sin(phi);
    return m;
}

double QuadratureGrid::weight(std::size_t i) const {
    if (domain_.kind == DomainKind::torus) return 1.0 / static_cast<double>(size_);
    const int n_phi = res_[1];
    const int ir = static_cast<int>(i / n_phi);
    const double dr = domain_.radius / res_[0];
    const double r = (ir + 0.5) * dr;
    return r * dr * (2 * kPi / n_phi);
}

double QuadratureGrid::total_weight() const {
    KahanSum s;
    if (domain_.kind == DomainKind::torus) {
        for (std::size_t i = 0; i < size_; ++i) s.add(1.0 / static_cast<double>(size_));
        return s.value();
    }
    const double dr = domain_.radius / res_[0];
    for (int ir = 0; ir < res_[0]; ++ir) s.add((ir + 0.5) * dr * dr * 2 * kPi);
    return s.value();
}

SympMap identity_map(const Domain& d) {
    SympMap q;
    q.domain = d;
    const int dim = d.dim;
    q.point = [](const RVec& m) { return m; };
    q.jacobian = [dim](const RVec&) { return RMat(RMat::Identity(dim, dim)); };
    q.has_isotopy = true;
    q.point_at = [](double, const RVec& m) { return m; };
    q.jacobian_at = [dim](double, const RVec&) { return RMat(RMat::Identity(dim, dim)); };
    q.phase_lift = [](double, const RVec&) { return 0.0; };
    if (d.kind == DomainKind::disk) q.turn_lift = [](const RVec&, Complex) { return 0.0; };
    q.support_radius = 0.0;
    return q;
}

SympMap linear_torus_map(const IntegerSymplectic& a) {
    SympMap q;
    q.domain = Domain{DomainKind::torus, 2 * a.half_dim(), 1.0};
    const RMat ar = a.as_real();
    q.point = [ar](const RVec& m) {
        RVec y = ar * m;
        for (int k = 0; k < y.size(); ++k) y(k) = frac01(y(k));
        return y;
    };
    q.jacobian = [ar](const RVec&) { return ar; };
    q.has_isotopy = false;  // the linear action is not isotopic to the identity
    return q;
}

double SineProfile::operator()(double t) const {
    return amplitude * std::sin(2 * kPi * harmonic * t + phase);
}

double SineProfile::deriv(double t) const {
    return amplitude * 2 * kPi * harmonic * std::cos(2 * kPi * harmonic * t + phase);
}

SympMap shear_map(int i, int j, const SineProfile& f, int two_n) {
    if (two_n < 2 || two_n % 2 != 0 || two_n > 16)
        throw invalid_input("shear_map: dimension must be even, 2..16");
    const int n = two_n / 2;
    if (i < 0 || j < 0 || i >= two_n || j >= two_n || (j != i + n && i != j + n))
        throw invalid_input("shear_map: (i, j) must be a conjugate coordinate pair");
    SympMap q;
    q.domain = Domain{DomainKind::torus, two_n, 1.0};
    q.point = [i, j, f](const RVec& m) {
        RVec y = m;
        y(i) = frac01(y(i) + f(m(j)));
        return y;
    };
    q.jacobian = [i, j, f, two_n](const RVec& m) {
        RMat u = RMat::Identity(two_n, two_n);
        u(i, j) = f.deriv(m(j));
        return u;
    };
    q.has_isotopy = true;
    q.point_at = [i, j, f](double s, const RVec& m) {
        RVec y = m;
        y(i) = frac01(y(i) + s * f(m(j)));
        return y;
    };
    q.jacobian_at = [i, j, f, two_n](double s, const RVec& m) {
        RMat u = RMat::Identity(two_n, two_n);
        u(i, j) = s * f.deriv(m(j));
        return u;
    };
    // det Phi of the unipotent Jacobian is 1 +- i s f'(x_j) / 2
    const double sign = i < two_n / 2 ? 1.0 : -1.0;
    q.phase_lift = [j, f, sign](double s, const RVec& m) {
        return std::atan2(sign * s * f.deriv(m(j)), 2.0);
    };
    return q;
}

SympMap compose(const SympMap& q1, const SympMap& q2) {
    if (!(q1.domain == q2.domain)) throw invalid_input("compose: domain mismatch");
    SympMap q;
    q.domain = q1.domain;
    auto p1 = q1.point, p2 = q2.point;
    auto j1 = q1.jacobian, j2 = q2.jacobian;
    q.point = [p1, p2](const RVec& m) { return p1(p2(m)); };
    q.jacobian = [p2, j1, j2](const RVec& m) { return RMat(j1(p2(m)) * j2(m)); };
    if (q1.has_isotopy && q2.has_isotopy) {
        q.has_isotopy = true;
        auto pa1 = q1.point_at, pa2 = q2.point_at;
        auto ja1 = q1.jacobian_at, ja2 = q2.jacobian_at;
        q.point_at = [pa1, pa2](double s, const RVec& m) { return pa1(s, pa2(s, m)); };
        q.jacobian_at = [pa2, ja1, ja2](double s, const RVec& m) {
            return RMat(ja1(s, pa2(s, m)) * ja2(s, m));
        };
        if (q1.phase_lift && q2.phase_lift) {
            auto pl1 = q1.phase_lift, pl2 = q2.phase_lift;
            q.phase_lift = [pl1, pl2, pa2, ja1, ja2](double s, const RVec& m) {
                const RVec y = pa2(s, m);
                const double angle = cocycle_c(to_blocks_unchecked(ja1(s, y)),
                                               to_blocks_unchecked(ja2(s, m)));
                return pl1(s, y) + pl2(s, m) + angle;
            };
        }
    }
    if (q1.turn_lift && q2.turn_lift) {
        auto tl1 = q1.turn_lift, tl2 = q2.turn_lift;
        auto p2f = q2.point;
        auto j2f = q2.jacobian;
        q.turn_lift = [tl1, tl2, p2f, j2f](const RVec& m, Complex w) {
            const double leg2 = tl2(m, w);
            const RMat j2 = j2f(m);
            const Complex w2(j2(0, 0) * w.real() + j2(0, 1) * w.imag(),
                             j2(1, 0) * w.real() + j2(1, 1) * w.imag());
            return tl1(p2f(m), w2) + leg2;
        };
    }
    if (q1.support_radius >= 0.0 && q2.support_radius >= 0.0)
        q.support_radius = std::max(q1.support_radius, q2.support_radius);
    return q;
}

CurrentElement pair_mul(const CurrentElement& e1, const CurrentElement& e2) {
    if (!(e1.domain == e2.domain)) throw invalid_input("pair_mul: base space mismatch");
    CurrentElement e;
    e.domain = e1.domain;
    auto p1 = e1.p, p2 = e2.p;
    auto h1 = e1.h, h2 = e2.h;
    e.p = [p1, p2](const RVec& m) { return p1(p2(m)); };
    e.h = [p2, h1, h2](const RVec& m) { return RMat(h1(p2(m)) * h2(m)); };
    return e;
}

CurrentElement embed(const SympMap& q) {
    CurrentElement e;
    e.domain = q.domain;
    e.p = q.point;
    e.h = q.jacobian;
    return e;
}

namespace {

void check_node_symplectic(const RMat& h, std::size_t node_index) {
    if (h.rows() == 2) {
        const double det = h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0);
        const double scale = 1.0 + h.squaredNorm();
        if (std::abs(det - 1.0) > 1e-9 * scale)
            throw numerical_failure("current_cocycle: Jacobian not symplectic at node " +
                                    std::to_string(node_index));
        return;
    }
    if (!check_symplectic(h).ok)
        throw numerical_failure("current_cocycle: Jacobian not symplectic at node " +
                                std::to_string(node_index));
}

Complex det_phi(const RMat& jac) {
    const BlockPair b = to_blocks_unchecked(jac);
    return b.half_dim() == 1 ? b.phi(0, 0) : b.phi.determinant();
}

}  // namespace

double current_cocycle(const CurrentElement& e1, const CurrentElement& e2,
                       const QuadratureGrid& grid) {
    if (!(e1.domain == e2.domain) || !(e1.domain == grid.domain()))
        throw invalid_input("current_cocycle: grid/base space mismatch");
    KahanSum acc;
    const std::size_t count = grid.size();
    for (std::size_t idx = 0; idx < count; ++idx) {
        const RVec m = grid.node(idx);
        const RVec y = e2.p(m);
        const RMat h2 = e2.h(m);
        const RMat h1 = e1.h(y);
        check_node_symplectic(h1, idx);
        check_node_symplectic(h2, idx);
        acc.add(grid.weight(idx) *
                cocycle_c(to_blocks_unchecked(h1), to_blocks_unchecked(h2)));
    }
    return acc.value();
}

double big_cocycle_C(const SympMap& q1, const SympMap& q2, const QuadratureGrid& grid) {
    return current_cocycle(embed(q1), embed(q2), grid);
}

namespace {

double isotopy_lift(const SympMap& q, const RVec& m, int initial_samples) {
    if (q.phase_lift) return q.phase_lift(1.0, m);
    const auto f = [&q, &m](double s) { return det_phi(q.jacobian_at(s, m)); };
    const LiftResult lr = lift_along(f, 0.0, 1.0, initial_samples);
    return lr.end_lift - lr.start_arg;  // the isotopy starts at the identity
}

RVec disk_anchor(const Domain& d) {
    RVec m0(2);
    m0(0) = kAnchorFraction * d.radius;
    m0(1) = 0.0;
    return m0;
}

double anchor_lift(const SympMap& q, const LiftOptions& opts) {
    const RVec m0 = disk_anchor(q.domain);
    if ((q.point(m0) - m0).norm() > 1e-9 * (1.0 + q.domain.radius))
        throw invalid_input("gamma_circ: support reaches the boundary anchor");
    if (q.support_radius >= 0.0 && q.support_radius >= kAnchorFraction * q.domain.radius)
        throw invalid_input("gamma_circ: declared support reaches the boundary anchor");
    return isotopy_lift(q, m0, opts.initial_samples);
}

}  // namespace

double nu_tilde(const SympMap& q, const RVec& m, const LiftOptions& opts) {
    if (!q.has_isotopy) throw unsupported_operation("nu_tilde: map carries no isotopy");
    const double raw = isotopy_lift(q, m, opts.initial_samples);
    if (q.domain.kind == DomainKind::torus) return raw;
    return raw - anchor_lift(q, opts);
}

double gamma_circ(const SympMap& q, const QuadratureGrid& grid, const LiftOptions& opts) {
    if (!q.has_isotopy) throw unsupported_operation("gamma_circ: map carries no isotopy");
    if (!(q.domain == grid.domain())) throw invalid_input("gamma_circ: grid/domain mismatch");
    double shift = 0.0;
    if (q.domain.kind == DomainKind::disk) shift = anchor_lift(q, opts);
    KahanSum acc;
    const std::size_t count = grid.size();
    for (std::size_t idx = 0; idx < count; ++idx) {
        const RVec m = grid.node(idx);
        acc.add(grid.weight(idx) * (isotopy_lift(q, m, opts.initial_samples) - shift));
    }
    return acc.value();
}

double move_area(const SympMap& q, const QuadratureGrid& grid, double tol) {
    if (!(q.domain == grid.domain())) throw invalid_input("move_area: grid/domain mismatch");
    KahanSum acc;
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
        const RVec m = grid.node(idx);
        const RVec y = q.point(m);
        double dist = 0.0;
        if (q.domain.kind == DomainKind::torus) {
            for (int k = 0; k < m.size(); ++k) {
                const double d = std::remainder(y(k) - m(k), 1.0);
                dist += d * d;
            }
            dist = std::sqrt(dist);
        } else {
            dist = (y - m).norm();
        }
        if (dist > tol) acc.add(grid.weight(idx));
    }
    return acc.value();
}

}  // namespace scc

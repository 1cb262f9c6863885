#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "scc/berezin.hpp"
#include "scc/symplectic.hpp"

namespace scc {

enum class DomainKind { torus, disk };

/// Base space of the integral cocycle: either the unit-volume torus T^{2n}
/// with coordinates in [0,1)^{2n}, or a planar disk of the given radius
/// centered at the origin.
struct Domain {
    DomainKind kind = DomainKind::torus;
    int dim = 2;           // 2n
    double radius = 1.0;   // disk only

    bool operator==(const Domain&) const = default;
    double volume() const;
};

/// Midpoint-rule quadrature nodes.  Nodes are generated lazily from the
/// resolution so large torus grids do not have to be materialized.
class QuadratureGrid {
  public:
    /// Uniform per-axis midpoint grid on T^{2n}; weights sum to 1 exactly.
    static QuadratureGrid torus_midpoint(int two_n, int per_axis);
    /// Polar midpoint grid (midpoints in r and phi); weights sum to pi R^2.
    static QuadratureGrid disk_polar(double radius, int n_r, int n_phi);

    const Domain& domain() const { return domain_; }
    const std::vector<int>& resolution() const { return res_; }
    std::size_t size() const { return size_; }
    RVec node(std::size_t i) const;
    double weight(std::size_t i) const;
    double total_weight() const;

    /// For disk grids: node index of (i_r, i_phi).
    std::size_t disk_index(int i_r, int i_phi) const { return static_cast<std::size_t>(i_r) * res_[1] + i_phi; }

  private:
    Domain domain_;
    std::vector<int> res_;
    std::size_t size_ = 0;
};

/// A symplectomorphism given in closed form: point map, exact Jacobian, and
/// (when available) an isotopy q_s with q_0 = id, q_1 = q, all evaluable at
/// arbitrary points.  No interpolation anywhere.
struct SympMap {
    Domain domain;
    std::function<RVec(const RVec&)> point;
    std::function<RMat(const RVec&)> jacobian;

    bool has_isotopy = false;
    std::function<RVec(double, const RVec&)> point_at;
    std::function<RMat(double, const RVec&)> jacobian_at;

    /// Closed-form continuous representative of arg det Phi(q_s'(m)),
    /// vanishing at s = 0.  When set, isotopy lifts are evaluated exactly
    /// instead of by sampled argument tracking (ramp transits in composed
    /// maps can outrun any fixed sampling rate).  Compositions combine legs
    /// through det Phi(AB) = det Phi(A) det Phi(B) det(1 + Z), whose last
    /// factor contributes the bounded single-valued cocycle angle.
    std::function<double(double, const RVec&)> phase_lift;

    /// Planar maps: closed-form continuous representative of
    /// arg(q'(m) w) - arg(w), jointly continuous in (m, w).  Vanishes where
    /// the Jacobian is the identity only up to its global 2 pi multiple, so
    /// consumers difference it against an anchor value.
    std::function<double(const RVec&, Complex)> turn_lift;

    /// Disk maps: all motion is contained in |m| <= support_radius (< domain
    /// radius); negative when unknown.  Torus maps: ignored.
    double support_radius = -1.0;
};

SympMap identity_map(const Domain& d);

/// m -> A m mod 1 on T^{2n}; constant Jacobian A; no isotopy is declared
/// (the linear action is not isotopic to the identity in general).
SympMap linear_torus_map(const IntegerSymplectic& a);

/// Closed-form 1-periodic profile a * sin(2 pi k t + phase).
struct SineProfile {
    double amplitude = 0.1;
    int harmonic = 1;
    double phase = 0.0;
    double operator()(double t) const;
    double deriv(double t) const;
};

/// Torus shear x_i += f(x_j), everything else fixed; (i, j) must be a
/// conjugate coordinate pair (j = i +- n).  Canonical isotopy scales f by s.
SympMap shear_map(int i, int j, const SineProfile& f, int two_n);

/// q1 after q2 (point maps compose, Jacobians chain, isotopies compose at
/// equal parameter).
SympMap compose(const SympMap& q1, const SympMap& q2);

/// An element {p, h} of the current group Ams(X) x F(X, Sp(2n,R)); both legs
/// closed-form, h validated at grid nodes on use.
struct CurrentElement {
    Domain domain;
    std::function<RVec(const RVec&)> p;
    std::function<RMat(const RVec&)> h;
};

/// {p1, h1} * {p2, h2} = {p1 o p2, (h1 o p2) h2}.
CurrentElement pair_mul(const CurrentElement& e1, const CurrentElement& e2);

/// The embedding q -> {q, q'}.
CurrentElement embed(const SympMap& q);

/// C({p1,h1},{p2,h2}) = sum_nodes w(m) c(h1(p2(m)), h2(m)).
/// Jacobian legs are symplectic-checked at every node; a failure reports the
/// node index.  Summation order is fixed, so results are bit-stable per grid.
double current_cocycle(const CurrentElement& e1, const CurrentElement& e2,
                       const QuadratureGrid& grid);

/// C(q1, q2) = sum_nodes w(m) c(q1'(q2(m)), q2'(m))  (the embedding above).
double big_cocycle_C(const SympMap& q1, const SympMap& q2, const QuadratureGrid& grid);

struct LiftOptions {
    int initial_samples = 48;  // per-node samples of the isotopy parameter
};

/// Flat trivializer: Gamma(q) = sum_nodes w(m) nu~(q, m), where nu~(q, m) is
/// the continuous-argument lift of s -> det Phi(q_s'(m)) normalized so that
/// nu~ vanishes where q is the identity next to the disk boundary.  On the
/// torus the raw isotopy lift is used.  Satisfies
///   C(q1, q2) = Gamma(q1 q2) - Gamma(q1) - Gamma(q2)
/// within quadrature error.
double gamma_circ(const SympMap& q, const QuadratureGrid& grid, const LiftOptions& opts = {});

/// The per-point lift nu~(q, m) described above (disk maps: anchored).
double nu_tilde(const SympMap& q, const RVec& m, const LiftOptions& opts = {});

/// Area of {m : q(m) != m} by grid counting.
double move_area(const SympMap& q, const QuadratureGrid& grid, double tol = 1e-12);

}  // namespace scc

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "scc/matcalc.hpp"
#include "scc/surface.hpp"

using namespace scc;
namespace {
constexpr double kPi = std::numbers::pi;

RVec pt(double x, double y) {
    RVec m(2);
    m << x, y;
    return m;
}

SympMap std_twist(double cx, double R0, double eps, TwistOrientation o = TwistOrientation::right) {
    TwistSpec s;
    s.center_x = cx;
    s.base_radius = R0;
    s.eps = eps;
    s.orientation = o;
    return epsilon_twist(s, 1.0);
}
}  // namespace

TEST_CASE("profile nu: boundary values, monotonicity, derivative support") {
    CHECK(nu_profile(-0.3) == 0.0);
    CHECK(nu_profile(0.0) == 0.0);
    CHECK(nu_profile(0.5) == doctest::Approx(2 * kPi));
    CHECK(nu_profile(2.0) == doctest::Approx(2 * kPi));
    CHECK(nu_profile(0.25) == doctest::Approx(kPi));  // symmetric midpoint
    double prev = 0.0;
    for (int k = 0; k <= 200; ++k) {
        const double x = 0.5 * k / 200;
        const double v = nu_profile(x);
        CHECK(v >= prev - 1e-15);
        CHECK(nu_profile_deriv(x) >= 0.0);
        prev = v;
    }
    CHECK(nu_profile_deriv(-0.1) == 0.0);
    CHECK(nu_profile_deriv(0.6) == 0.0);
    // derivative consistent with finite differences away from the endpoints
    for (double x : {0.1, 0.2, 0.25, 0.35, 0.45}) {
        const double h = 1e-6;
        const double fd = (nu_profile(x + h) - nu_profile(x - h)) / (2 * h);
        CHECK(nu_profile_deriv(x) == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("epsilon twist: pointwise fixing inside and outside the ramp") {
    const SympMap q = std_twist(0.0, 0.6, 0.2);
    CHECK((q.point(pt(0.3, 0.2)) - pt(0.3, 0.2)).norm() < 1e-15);   // r < R
    CHECK((q.point(pt(0.7, 0.0)) - pt(0.7, 0.0)).norm() < 1e-12);   // rotated by 2pi
    const RVec mid = pt(0.63, 0.0);                                 // inside the ramp
    CHECK((q.point(mid) - mid).norm() > 1e-3);

    CHECK_THROWS_AS(q.point(pt(1.2, 0.0)), domain_violation);
    TwistSpec toobig;
    toobig.base_radius = 0.95;
    toobig.eps = 0.2;
    CHECK_THROWS_AS(epsilon_twist(toobig, 1.0), invalid_input);
}

TEST_CASE("epsilon twist: exact unit Jacobian determinant") {
    const SympMap q = std_twist(0.1, 0.5, 0.15);
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double worst = 0.0;
    for (int t = 0; t < 10000; ++t) {
        const double r = 0.9 * std::sqrt(uni(rng));
        const double a = 2 * kPi * uni(rng);
        const RMat j = q.jacobian(pt(r * std::cos(a), r * std::sin(a)));
        const double det = j(0, 0) * j(1, 1) - j(0, 1) * j(1, 0);
        worst = std::max(worst, std::abs(det - 1.0) / (1.0 + j.squaredNorm()));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("twist Jacobian matches finite differences of the point map") {
    const SympMap q = std_twist(0.05, 0.5, 0.2);
    const double h = 1e-7;
    for (const RVec& m : {pt(0.52, 0.1), pt(-0.4, 0.33), pt(0.1, -0.56)}) {
        const RMat j = q.jacobian(m);
        for (int col = 0; col < 2; ++col) {
            RVec dp = m, dm = m;
            dp(col) += h;
            dm(col) -= h;
            const RVec fd = (q.point(dp) - q.point(dm)) / (2 * h);
            CHECK(std::abs(fd(0) - j(0, col)) < 2e-5 * (1.0 + j.norm()));
            CHECK(std::abs(fd(1) - j(1, col)) < 2e-5 * (1.0 + j.norm()));
        }
    }
}

TEST_CASE("turning angle: identity, untouched points, the interior winding") {
    const SympMap q = std_twist(0.0, 0.6, 0.1);
    CHECK(turning_angle(identity_map(q.domain), 0.3, 0.2, 1.0, 0.0) == doctest::Approx(0.0));
    // outside the support
    CHECK(turning_angle(q, 0.9, 0.0, 0.0, 1.0) == doctest::Approx(0.0));
    // interior of a right twist: the vector winds by -2pi, the det-Phi lift by +2pi
    CHECK(turning_angle(q, 0.1, 0.05, 1.0, 0.0) == doctest::Approx(-2 * kPi));
    CHECK(nu_tilde(q, pt(0.1, 0.05)) == doctest::Approx(2 * kPi));
    const SympMap l = std_twist(0.0, 0.6, 0.1, TwistOrientation::left);
    CHECK(turning_angle(l, 0.1, 0.05, 1.0, 0.0) == doctest::Approx(2 * kPi));
    CHECK(nu_tilde(l, pt(0.1, 0.05)) == doctest::Approx(-2 * kPi));
}

TEST_CASE("turning angle closed form matches the tracked-curve route") {
    SympMap q = std_twist(0.12, 0.45, 0.2);
    SympMap slow = q;
    slow.turn_lift = nullptr;  // force the sampled Lemma-3.3 route
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    TrackingOptions topt;
    topt.initial_samples = 4096;
    double worst = 0.0;
    for (int t = 0; t < 40; ++t) {
        const double r = 0.8 * std::sqrt(uni(rng));
        const double a = 2 * kPi * uni(rng);
        const double va = 2 * kPi * uni(rng);
        const double fast = turning_angle(q, r * std::cos(a), r * std::sin(a), std::cos(va),
                                          std::sin(va));
        const double ref = turning_angle(slow, r * std::cos(a), r * std::sin(a), std::cos(va),
                                         std::sin(va), topt);
        worst = std::max(worst, std::abs(fast - ref));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("turning angle chain rule and subadditivity") {
    const SympMap q1 = std_twist(0.15, 0.5, 0.15);
    const SympMap q2 = std_twist(-0.15, 0.5, 0.2, TwistOrientation::left);
    const SympMap q12 = compose(q1, q2);
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double worst = 0.0, max1 = 0.0, max2 = 0.0, max12 = 0.0;
    for (int t = 0; t < 300; ++t) {
        const double r = 0.8 * std::sqrt(uni(rng));
        const double a = 2 * kPi * uni(rng);
        const double x = r * std::cos(a), y = r * std::sin(a);
        const double va = 2 * kPi * uni(rng);
        const double vx = std::cos(va), vy = std::sin(va);
        const double lhs = turning_angle(q12, x, y, vx, vy);
        const RMat j2 = q2.jacobian(pt(x, y));
        const RVec img = q2.point(pt(x, y));
        const double wx = j2(0, 0) * vx + j2(0, 1) * vy;
        const double wy = j2(1, 0) * vx + j2(1, 1) * vy;
        const double rhs = turning_angle(q2, x, y, vx, vy) +
                           turning_angle(q1, img(0), img(1), wx, wy);
        worst = std::max(worst, std::abs(lhs - rhs));
        max1 = std::max(max1, std::abs(turning_angle(q1, x, y, vx, vy)));
        max2 = std::max(max2, std::abs(turning_angle(q2, x, y, vx, vy)));
        max12 = std::max(max12, std::abs(lhs));
    }
    CHECK(worst < 1e-9);
    CHECK(max12 <= max1 + max2 + 1e-9);
}

TEST_CASE("Jacobian-phase proximity bound |Ang + nu~| < pi/2") {
    const SympMap q1 = std_twist(0.15, 0.5, 0.1);
    const SympMap q2 = std_twist(-0.15, 0.5, 0.15, TwistOrientation::left);
    const SympMap q12 = compose(q1, q2);
    std::mt19937_64 rng(20);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double worst = 0.0;
    for (int t = 0; t < 2000; ++t) {
        const double r = 0.8 * std::sqrt(uni(rng));
        const double a = 2 * kPi * uni(rng);
        const double va = 2 * kPi * uni(rng);
        const RVec m = pt(r * std::cos(a), r * std::sin(a));
        for (const SympMap* q : {&q1, &q2, &q12}) {
            const double ang = turning_angle(*q, m(0), m(1), std::cos(va), std::sin(va));
            worst = std::max(worst, std::abs(ang + nu_tilde(*q, m)));
        }
    }
    CHECK(worst < kPi / 2);
}

TEST_CASE("flux: identity map, enclosed and unenclosed holes, shoelace oracle") {
    const CurveSample u = CurveSample::segment(1.0, 0.0, 0.34, 0.0);
    CHECK(std::abs(flux_tau(identity_map(Domain{DomainKind::disk, 2, 1.0}), u)) < 1e-14);

    // right twist about a circle of area pi 0.16 enclosing the hole at (0.3, 0)
    SympMap q = std_twist(0.3, 0.4, 0.05);
    const double tau = flux_tau(q, u);
    CHECK(tau == doctest::Approx(kPi * 0.16).epsilon(0.05));

    // shoelace oracle: tau equals the oriented area of the closed loop made of
    // u and the reversed image curve
    {
        const int n = 1 << 15;
        KahanSum area;
        auto lam = [](const RVec& p, const RVec& v) { return 0.5 * (p(0) * v(1) - p(1) * v(0)); };
        for (int k = 0; k <= n; ++k) {
            const double t = static_cast<double>(k) / n;
            const RVec p = u.pos(t);
            const RVec v = u.vel(t);
            const RVec qp = q.point(p);
            const RVec qv = q.jacobian(p) * v;
            const double f = lam(p, v) - lam(qp, qv);
            area.add((k == 0 || k == n ? 0.5 : 1.0) * f / n);
        }
        CHECK(tau == doctest::Approx(area.value()).epsilon(1e-6));
    }

    // a curve to a far hole avoiding the support sees no flux
    const CurveSample u2 = CurveSample::segment(-1.0, 0.0, -0.64, 0.0);
    CHECK(std::abs(flux_tau(q, u2)) < 1e-12);

    // u-independence: a bent route to the same hole
    const CurveSample bent = CurveSample::segment(0.0, -1.0, 0.3, -0.04);
    CHECK(flux_tau(q, bent) == doctest::Approx(tau).epsilon(1e-6));

    CHECK_THROWS_AS(flux_tau(q, CurveSample::segment(1.5, 0.0, 0.3, 0.0)), invalid_input);
}

TEST_CASE("calabi: identity, twist value, additivity on disjoint twists") {
    const auto grid = QuadratureGrid::disk_polar(1.0, 512, 16);
    CHECK(std::abs(calabi(identity_map(Domain{DomainKind::disk, 2, 1.0}), grid)) < 1e-12);

    // left twist carries +sigma(S)^2, right twist -sigma(S)^2
    const double sS = kPi * 0.36;
    const SympMap l = std_twist(0.0, 0.6, 0.05, TwistOrientation::left);
    CHECK(calabi(l, grid) == doctest::Approx(sS * sS).epsilon(0.06));
    const SympMap r = std_twist(0.0, 0.6, 0.05);
    CHECK(calabi(r, grid) == doctest::Approx(-sS * sS).epsilon(0.06));

    // additivity on disjoint supports
    const auto grid2 = QuadratureGrid::disk_polar(1.0, 1024, 64);
    const SympMap a = std_twist(0.45, 0.25, 0.1, TwistOrientation::left);
    const SympMap b = std_twist(-0.45, 0.25, 0.1);
    const double ka = calabi(a, grid2);
    const double kb = calabi(b, grid2);
    const double kab = calabi(compose(a, b), grid2);
    CHECK(kab == doctest::Approx(ka + kb).epsilon(1e-4));
}

TEST_CASE("gamma_circ on twists: paper limit and the trivializer identity") {
    // interior lift of the right twist is exactly 2pi, so Gamma tracks the
    // enclosed area
    const SympMap q = std_twist(0.0, 0.6, 0.1);
    const auto grid = QuadratureGrid::disk_polar(1.0, 4096, 16);
    const double g = gamma_circ(q, grid);
    CHECK(g > 2 * kPi * (kPi * 0.36));
    CHECK(g < 2 * kPi * (kPi * 0.36) * 1.1);

    // 1d radial oracle for the centered twist
    {
        const int n = 1 << 17;
        KahanSum acc;
        const double R0 = 0.6, eps = 0.1, RL = 1.0;
        for (int k = 0; k < n; ++k) {
            const double r = (k + 0.5) * RL / n;
            const double u = (r / R0 - 1.0) / eps;
            const double lift = 2 * kPi - nu_profile(u) +
                                std::atan2(-r * nu_profile_deriv(u) / (R0 * eps), 2.0);
            acc.add(lift * 2 * kPi * r * (RL / n));
        }
        CHECK(g == doctest::Approx(acc.value()).epsilon(1e-6));
    }

    const SympMap q2 = std_twist(-0.15, 0.5, 0.12);
    const SympMap q1 = std_twist(0.15, 0.5, 0.12);
    const SympMap q12 = compose(q1, q2);
    const auto cg = QuadratureGrid::disk_polar(1.0, 768, 256);
    const double resid = std::abs(big_cocycle_C(q1, q2, cg) -
                                  (gamma_circ(q12, cg) - gamma_circ(q1, cg) - gamma_circ(q2, cg)));
    CHECK(resid < 5e-3);
}

TEST_CASE("twist_report rows, fits, and area scaling") {
    TwistSpec base;
    base.base_radius = 0.5;
    TwistReportOptions opts;
    opts.grid_n_r = 1024;
    opts.grid_n_phi = 16;
    const std::vector<double> eps = {0.2, 0.1, 0.05};
    std::vector<HoleSpec> holes = {{0.0, 0.0, 0.04}};
    const TwistReport rep = twist_report(base, eps, holes, opts);
    REQUIRE(rep.rows.size() == 3);
    REQUIRE(rep.rows[0].taus.size() == 1);
    const double sS = kPi * 0.25;
    CHECK(rep.gamma_fit.intercept == doctest::Approx(2 * kPi * sS).epsilon(0.02));
    CHECK(rep.tau_fits[0].intercept == doctest::Approx(sS).epsilon(0.02));
    CHECK(rep.calabi_fit.intercept == doctest::Approx(-sS * sS).epsilon(0.02));

    // scaling the base radius by sqrt(1.1) scales the fitted limit by 1.1
    TwistSpec scaled = base;
    scaled.base_radius = 0.5 * std::sqrt(1.1);
    const TwistReport rep2 = twist_report(scaled, eps, {}, opts);
    CHECK(rep2.gamma_fit.intercept ==
          doctest::Approx(1.1 * rep.gamma_fit.intercept).epsilon(0.01));

    CHECK_THROWS_AS(twist_report(base, {0.3}, {}, opts), invalid_input);
}

TEST_CASE("lantern combination depends on every area slot") {
    const std::array<double, 4> sv = {1.0, 0.8, 0.7, 0.6};
    const std::array<double, 3> sw = {0.5, 0.4, 0.3};
    const std::array<double, 3> a = {0.2, -0.1, 0.4};
    const double base = lantern_combination(sv, sw, a, 0.7, 1.3);
    std::array<double, 4> sv2 = sv;
    sv2[1] += 0.05;
    CHECK(lantern_combination(sv2, sw, a, 0.7, 1.3) != doctest::Approx(base));
    // with all couplings zero it reduces to -H + 2pi (sum V - sum W)
    const std::array<double, 3> zero = {0.0, 0.0, 0.0};
    CHECK(lantern_combination(sv, sw, zero, 0.0, 0.0) ==
          doctest::Approx(2 * kPi * (3.1 - 1.2)));
}

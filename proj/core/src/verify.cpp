#include "scc/verify.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "scc/berezin.hpp"
#include "scc/lattice.hpp"
#include "scc/matcalc.hpp"
#include "scc/surface.hpp"

namespace scc::verify {

namespace {

constexpr double kPi = std::numbers::pi;

SuiteResult result(std::string name, int trials, double worst, double threshold, int failures) {
    SuiteResult r;
    r.name = std::move(name);
    r.trials = trials;
    r.failures = failures;
    r.worst_residual = worst;
    r.threshold = threshold;
    r.pass = failures == 0 && worst < threshold;
    return r;
}

SuiteResult suite_cocycle_identity(std::uint64_t seed, int trials) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const auto g1 = random_symplectic(n, rng(), 1.5);
        const auto g2 = random_symplectic(n, rng(), 1.5);
        const auto g3 = random_symplectic(n, rng(), 1.5);
        const double r = cocycle_c(g1, g2) + cocycle_c(g1 * g2, g3) - cocycle_c(g1, g2 * g3) -
                         cocycle_c(g2, g3);
        worst = std::max(worst, std::abs(r));
    }
    return result("cocycle-identity", trials, worst, 1e-9, 0);
}

SuiteResult suite_bound(std::uint64_t seed, int trials) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;  // max |c| / (n pi / 2); must stay strictly below 1
    for (int t = 0; t < trials; ++t) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const double spread = (t % 4 == 0) ? 2.0 : 1.5;  // include adversarial pairs
        const auto g1 = random_symplectic(n, rng(), spread);
        const auto g2 = random_symplectic(n, rng(), spread);
        worst = std::max(worst, std::abs(cocycle_c(g1, g2)) / (n * kPi / 2));
    }
    return result("bound", trials, worst, 1.0, 0);
}

// Integer coboundary relating the class of a conjugated pair to the original:
// beta(g) = (x'(g) - gamma(h^-1 g h)) / 2pi where x'(g) is the x-coordinate of
// h~^{-1} (g, gamma(g)) h~ in the cover, h~ = (h, gamma(h)).
long conjugation_beta(const RealSymplectic& g, const RealSymplectic& h,
                      const RealSymplectic& hi) {
    const double xprime = trivializer_gamma(g) + cocycle_c(g, h) - cocycle_c(h, hi) +
                          cocycle_c(hi, g * h);
    const auto conj = RealSymplectic::from_matrix_unchecked(
        RMat(hi.matrix() * g.matrix() * h.matrix()));
    const double val = (xprime - trivializer_gamma(conj)) / (2 * kPi);
    const long k = std::lround(val);
    if (std::abs(val - static_cast<double>(k)) > 1e-6)
        throw numerical_failure("conjugation_beta: residual too large");
    return k;
}

SuiteResult suite_integer_class(std::uint64_t seed, int trials) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    int failures = 0;
    for (int t = 0; t < trials; ++t) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const auto g1 = random_symplectic(n, rng(), 1.5);
        const auto g2 = random_symplectic(n, rng(), 1.5);
        const double val = (cocycle_c(g1, g2) + trivializer_gamma(g1) + trivializer_gamma(g2) -
                            trivializer_gamma(g1 * g2)) /
                           (2 * kPi);
        worst = std::max(worst, std::abs(val - std::round(val)));
        // conjugation equivalence, exact at the integer level: the conjugated
        // class differs from the original by the coboundary of beta
        const auto h = random_symplectic(n, rng(), 1.0);
        const auto hi = h.inverse();
        auto conj = [&](const RealSymplectic& g) {
            return RealSymplectic::from_matrix_unchecked(
                RMat(hi.matrix() * g.matrix() * h.matrix()));
        };
        const long lhs = integer_class(g1, g2) - integer_class(conj(g1), conj(g2));
        const long rhs = conjugation_beta(g1, h, hi) + conjugation_beta(g2, h, hi) -
                         conjugation_beta(g1 * g2, h, hi);
        if (lhs != rhs) ++failures;
    }
    return result("integer-class", trials, worst, 1e-8, failures);
}

SuiteResult suite_sigma(std::uint64_t seed, int trials) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> alpha_dist(0.25, 2.5);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const int n = 1 + static_cast<int>(rng() % 2);
        const auto g1 = random_symplectic(n, rng(), 1.5);
        const auto g2 = random_symplectic(n, rng(), 1.5);
        const Complex trlog = cocycle_trlog(to_blocks(g1), to_blocks(g2));
        const Complex sigma = berezin_sigma(g1, g2);
        const double c = trlog.imag();
        // arg sigma == -c/2 mod 2pi
        worst = std::max(worst, std::abs(std::remainder(std::arg(sigma) + c / 2, 2 * kPi)));
        // |sigma| exp(Re trlog / 2) == 1
        worst = std::max(worst, std::abs(std::abs(sigma) * std::exp(trlog.real() / 2) - 1.0));
        // real part is the trivial cocycle: coboundary of ln|det Phi|
        const auto logdet = [](const RealSymplectic& g) {
            const BlockPair b = to_blocks(g);
            return std::log(std::abs(b.half_dim() == 1 ? b.phi(0, 0) : b.phi.determinant()));
        };
        worst = std::max(worst, std::abs(trlog.real() - (logdet(g1 * g2) - logdet(g1) - logdet(g2))));
        // alpha = 1 is the plain determinant inverse
        const double alpha = alpha_dist(rng);
        const Complex sa = sigma_alpha(g1, g2, alpha);
        worst = std::max(worst, std::abs(sa - std::exp(-alpha * trlog)));
    }
    return result("sigma", trials, worst, 1e-9, 0);
}

SuiteResult suite_cover(std::uint64_t seed, int trials) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-8.0, 8.0);
    double worst = 0.0;
    int failures = 0;
    for (int t = 0; t < trials; ++t) {
        const int n = 1 + static_cast<int>(rng() % 2);
        auto lift = [&](const RealSymplectic& g) {
            return make_cover_element(g, trivializer_gamma(g));
        };
        const auto e1 = lift(random_symplectic(n, rng(), 1.2));
        const auto e2 = lift(random_symplectic(n, rng(), 1.2));
        const auto e3 = lift(random_symplectic(n, rng(), 1.2));
        const auto left = cover_mul(cover_mul(e1, e2), e3);
        const auto right = cover_mul(e1, cover_mul(e2, e3));
        worst = std::max(worst, std::abs(left.x - right.x));
        // deck transformation: loop_lift(2 pi) sits over the identity
        const auto deck = loop_lift(2 * kPi, n);
        if ((deck.g.matrix() - RMat::Identity(2 * n, 2 * n)).norm() > 1e-12 ||
            std::abs(deck.x - 2 * kPi) > 0)
            ++failures;
        const double y = uni(rng);
        const auto el = loop_lift(y, n);
        if (std::abs(el.x - y) > 0) ++failures;
    }
    return result("cover", trials, worst, 1e-9, failures);
}

SuiteResult suite_current(std::uint64_t seed, int trials) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    // linear collapse: C == c exactly for linear torus maps
    const TorsionGenerators gen = torsion_generators();
    for (int t = 0; t < std::max(1, trials / 25); ++t) {
        const int n = 2 + static_cast<int>(rng() % 2);
        auto rnd_int_symp = [&]() {
            IntegerSymplectic a = sl2_embed(gen.I, n);
            for (int k = 0; k < 4; ++k) {
                const IMat2 pick = (rng() % 2) ? gen.K : gen.I;
                a = a * sl2_embed(pick, n);
            }
            return a;
        };
        const auto a1 = rnd_int_symp();
        const auto a2 = rnd_int_symp();
        const auto grid = QuadratureGrid::torus_midpoint(2 * n, 2);
        const double cc = big_cocycle_C(linear_torus_map(a1), linear_torus_map(a2), grid);
        const double c = cocycle_c(RealSymplectic::from_matrix(a1.as_real()),
                                   RealSymplectic::from_matrix(a2.as_real()));
        worst = std::max(worst, std::abs(cc - c));
    }
    // cocycle identity for C on T^2 shears, against the refinement estimate
    const SympMap q1 = shear_map(0, 1, SineProfile{0.11, 1, 0.0}, 2);
    const SympMap q2 = shear_map(1, 0, SineProfile{0.09, 1, 0.4}, 2);
    const SympMap q3 = shear_map(0, 1, SineProfile{0.07, 2, 1.1}, 2);
    const auto gridN = QuadratureGrid::torus_midpoint(2, 64);
    const auto grid2N = QuadratureGrid::torus_midpoint(2, 128);
    double est = 1e-13;
    double resid = 0.0;
    {
        const SympMap q12 = compose(q1, q2);
        const SympMap q23 = compose(q2, q3);
        const double a = big_cocycle_C(q1, q2, gridN), a2 = big_cocycle_C(q1, q2, grid2N);
        const double b = big_cocycle_C(q12, q3, gridN), b2 = big_cocycle_C(q12, q3, grid2N);
        const double c = big_cocycle_C(q1, q23, gridN), c2 = big_cocycle_C(q1, q23, grid2N);
        const double d = big_cocycle_C(q2, q3, gridN), d2 = big_cocycle_C(q2, q3, grid2N);
        est += std::abs(a - a2) + std::abs(b - b2) + std::abs(c - c2) + std::abs(d - d2);
        resid = std::abs(a + b - c - d);
    }
    return result("current", trials, worst, 1e-12, resid < 3 * est ? 0 : 1);
}

SuiteResult suite_surface(std::uint64_t seed, int trials) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> ang(0.0, 2 * kPi);
    auto disk_point = [&](double rmax) {
        const double r = rmax * std::sqrt(unit(rng));
        const double a = ang(rng);
        RVec m(2);
        m(0) = r * std::cos(a);
        m(1) = r * std::sin(a);
        return m;
    };
    TwistSpec spec;
    spec.center_x = 0.12;
    spec.base_radius = 0.45;
    spec.eps = 0.12;
    const SympMap tw = epsilon_twist(spec, 1.0);
    TwistSpec spec2 = spec;
    spec2.center_x = -0.12;
    spec2.orientation = TwistOrientation::left;
    const SympMap tw2 = epsilon_twist(spec2, 1.0);
    const SympMap both = compose(tw, tw2);

    double worst_det = 0.0;
    double worst_lemma34 = 0.0;
    const int samples = std::max(40, trials / 2);
    for (int t = 0; t < samples; ++t) {
        const RVec m = disk_point(0.9);
        const RMat j = both.jacobian(m);
        const double det = j(0, 0) * j(1, 1) - j(0, 1) * j(1, 0);
        worst_det = std::max(worst_det, std::abs(det - 1.0) / (1.0 + j.squaredNorm()));
    }
    const int pts34 = std::max(10, trials / 20);
    for (int t = 0; t < pts34; ++t) {
        const RVec m = disk_point(0.8);
        const double a = ang(rng);
        for (const SympMap* q : {&tw, &both}) {
            const double angv = turning_angle(*q, m(0), m(1), std::cos(a), std::sin(a));
            const double nt = nu_tilde(*q, m);
            worst_lemma34 = std::max(worst_lemma34, std::abs(angv + nt));
        }
    }
    // flux homomorphism additivity on a shared cross-cut
    const CurveSample u = CurveSample::segment(0.9848, 0.1736, 0.05, 0.0088);
    const double tau1 = flux_tau(tw, u);
    const double tau2 = flux_tau(tw2, u);
    const double tau12 = flux_tau(both, u);
    const double hom_resid = std::abs(tau12 - tau1 - tau2);

    SuiteResult r;
    r.name = "surface";
    r.trials = samples + pts34;
    r.failures = (worst_det < 1e-12 ? 0 : 1) + (worst_lemma34 < kPi / 2 ? 0 : 1) +
                 (hom_resid < 1e-5 ? 0 : 1);
    r.worst_residual = worst_lemma34;
    r.threshold = kPi / 2;
    r.pass = r.failures == 0;
    return r;
}

SuiteResult suite_obstruction(std::uint64_t, int) {
    double worst = 0.0;
    int failures = 0;
    for (double alpha : {0.3, 0.5, 1.0, 1.7, 2.0}) {
        const ObstructionReport rep = obstruction_witness(alpha);
        const Complex expect = std::polar(1.0, -2 * kPi * alpha);
        worst = std::max(worst, std::abs(rep.holonomy_i4 - expect));
        worst = std::max(worst, std::abs(rep.holonomy_j3 - expect));
        const bool integer = std::abs(alpha - std::round(alpha)) < 1e-12;
        if (rep.nontrivial == integer) ++failures;
    }
    return result("obstruction", 5, worst, 1e-9, failures);
}

}  // namespace

std::vector<SuiteResult> run(const std::string& suite, std::uint64_t seed, int trials) {
    std::vector<SuiteResult> out;
    const bool all = suite == "all";
    bool known = all;
    auto want = [&](const char* name) {
        if (all || suite == name) {
            known = true;
            return true;
        }
        return false;
    };
    if (want("cocycle-identity")) out.push_back(suite_cocycle_identity(seed, trials));
    if (want("bound")) out.push_back(suite_bound(seed + 1, trials));
    if (want("integer-class")) out.push_back(suite_integer_class(seed + 2, trials));
    if (want("sigma")) out.push_back(suite_sigma(seed + 3, trials));
    if (want("cover")) out.push_back(suite_cover(seed + 4, std::max(1, trials / 5)));
    if (want("current")) out.push_back(suite_current(seed + 5, trials));
    if (want("surface")) out.push_back(suite_surface(seed + 6, trials));
    if (want("obstruction")) out.push_back(suite_obstruction(seed + 7, trials));
    if (!known) throw invalid_input("verify: unknown suite '" + suite + "'");
    return out;
}

bool all_pass(const std::vector<SuiteResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

}  // namespace scc::verify

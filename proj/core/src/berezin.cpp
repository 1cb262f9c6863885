#include "scc/berezin.hpp"

#include <cmath>
#include <numbers>

#include "scc/matcalc.hpp"

namespace scc {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kIntegerClassTol = 1e-6;
}  // namespace

Complex cocycle_trlog(const BlockPair& b1, const BlockPair& b2) {
    if (b1.half_dim() != b2.half_dim()) throw invalid_input("cocycle: dimension mismatch");
    if (b1.half_dim() == 1) {
        const Complex z = (b1.psi(0, 0) / b1.phi(0, 0)) * std::conj(b2.psi(0, 0)) / b2.phi(0, 0);
        if (std::abs(z) >= 1.0) throw numerical_failure("cocycle: |Z| >= 1, blocks invalid");
        return std::log(Complex(1.0) + z);
    }
    // Z = Phi(g1)^{-1} Psi(g1) * conj(Psi(g2)) Phi(g2)^{-1}
    const CMat a = b1.phi.partialPivLu().solve(b1.psi);
    const CMat binv = b2.phi.inverse();
    const CMat z = CMat(a * CMat(b2.psi.conjugate() * binv));
    return tr_log_one_plus(z);
}

double cocycle_c(const BlockPair& b1, const BlockPair& b2) {
    return cocycle_trlog(b1, b2).imag();
}

double cocycle_c(const RealSymplectic& g1, const RealSymplectic& g2) {
    return cocycle_c(to_blocks(g1), to_blocks(g2));
}

double trivializer_gamma(const BlockPair& b) {
    const Complex det = b.half_dim() == 1 ? b.phi(0, 0) : b.phi.determinant();
    double a = std::arg(det);  // (-pi, pi]
    if (a < 0.0) a += 2 * kPi;
    if (a >= 2 * kPi) a = 0.0;
    return a;
}

double trivializer_gamma(const RealSymplectic& g) { return trivializer_gamma(to_blocks(g)); }

long integer_class(const RealSymplectic& g1, const RealSymplectic& g2) {
    const BlockPair b1 = to_blocks(g1);
    const BlockPair b2 = to_blocks(g2);
    const BlockPair b12 = to_blocks(g1 * g2);
    const double val =
        (cocycle_c(b1, b2) + trivializer_gamma(b1) + trivializer_gamma(b2) - trivializer_gamma(b12)) /
        (2 * kPi);
    const long k = std::lround(val);
    if (std::abs(val - static_cast<double>(k)) > kIntegerClassTol)
        throw numerical_failure("integer_class: residual " + std::to_string(val - k) +
                                " exceeds tolerance (branch bug?)");
    return k;
}

Complex berezin_sigma(const RealSymplectic& g1, const RealSymplectic& g2) {
    return std::exp(-cocycle_trlog(to_blocks(g1), to_blocks(g2)) / 2.0);
}

Complex sigma_alpha(const RealSymplectic& g1, const RealSymplectic& g2, double alpha) {
    return std::exp(-alpha * cocycle_trlog(to_blocks(g1), to_blocks(g2)));
}

namespace {

double phase_residual(const RealSymplectic& g, double x) {
    const BlockPair b = to_blocks(g);
    const Complex det = b.half_dim() == 1 ? b.phi(0, 0) : b.phi.determinant();
    return std::abs(det / std::abs(det) - std::polar(1.0, x));
}

}  // namespace

CoverElement make_cover_element(const RealSymplectic& g, double x) {
    if (phase_residual(g, x) > 1e-9)
        throw numerical_failure("CoverElement: e^{ix} does not match the phase of det Phi(g)");
    return CoverElement{g, x};
}

CoverElement cover_mul(const CoverElement& e1, const CoverElement& e2) {
    if (phase_residual(e1.g, e1.x) > 1e-9 || phase_residual(e2.g, e2.x) > 1e-9)
        throw numerical_failure("cover_mul: input validation failed");
    const RealSymplectic g = e1.g * e2.g;
    const double x = e1.x + e2.x + cocycle_c(e1.g, e2.g);
    return make_cover_element(g, x);
}

CoverElement loop_lift(double y, int n) {
    if (n < 1 || n > 8) throw invalid_input("loop_lift: need 1 <= n <= 8");
    BlockPair bp;
    bp.phi = CMat::Identity(n, n);
    bp.phi(0, 0) = std::polar(1.0, y);
    bp.psi = CMat::Zero(n, n);
    const RealSymplectic g = from_blocks(bp);
    return CoverElement{g, y};  // valid for all y, including outside [0, 2pi)
}

}  // namespace scc

#include "scc/symplectic.hpp"

#include <cmath>
#include <random>

#include "scc/matcalc.hpp"

namespace scc {

RMat standard_form(int n) {
    RMat k = RMat::Zero(2 * n, 2 * n);
    k.topRightCorner(n, n) = RMat::Identity(n, n);
    k.bottomLeftCorner(n, n) = -RMat::Identity(n, n);
    return k;
}

SymplecticCheck check_symplectic(const RMat& m, double tol) {
    if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0)
        throw invalid_input("check_symplectic: matrix must be square of even size");
    if (!m.allFinite())
        throw invalid_input("check_symplectic: non-finite entries");
    const int n = static_cast<int>(m.rows()) / 2;
    const RMat k = standard_form(n);
    const double residual = operator_norm(RMat(m.transpose() * k * m - k));
    const double scale = operator_norm(m);
    return {residual, residual <= tol * (1.0 + scale * scale)};
}

double BlockPair::relation_residual() const {
    const int n = half_dim();
    const CMat id = CMat::Identity(n, n);
    const double r1 = (phi * phi.adjoint() - psi * psi.adjoint() - id).norm();
    const double r2 = (phi.adjoint() * phi - psi.transpose() * psi.conjugate() - id).norm();
    return std::max(r1, r2);
}

double BlockPair::contraction_norm() const {
    const CMat a = phi.partialPivLu().solve(psi);
    const CMat b = psi.conjugate() * phi.inverse();
    return std::max(operator_norm(a), operator_norm(b));
}

void BlockPair::validate(double tol) const {
    if (phi.rows() != phi.cols() || psi.rows() != psi.cols() || phi.rows() != psi.rows())
        throw invalid_input("BlockPair: blocks must be square of equal size");
    if (!phi.allFinite() || !psi.allFinite())
        throw invalid_input("BlockPair: non-finite entries");
    const double scale = 1.0 + operator_norm(phi) + operator_norm(psi);
    if (relation_residual() > tol * scale * scale)
        throw invalid_input("BlockPair: block relations violated");
    if (contraction_norm() >= 1.0)
        throw invalid_input("BlockPair: contraction bound |Phi^{-1}Psi| < 1 violated");
}

RealSymplectic RealSymplectic::from_matrix(const RMat& m, double tol) {
    const SymplecticCheck chk = check_symplectic(m, tol);
    if (!chk.ok)
        throw invalid_input("RealSymplectic: symplectic residual " + std::to_string(chk.residual));
    return RealSymplectic(m, static_cast<int>(m.rows()) / 2);
}

RealSymplectic RealSymplectic::from_matrix_unchecked(const RMat& m) {
    return RealSymplectic(m, static_cast<int>(m.rows()) / 2);
}

RealSymplectic RealSymplectic::identity(int n) {
    return RealSymplectic(RMat::Identity(2 * n, 2 * n), n);
}

RealSymplectic RealSymplectic::operator*(const RealSymplectic& rhs) const {
    if (n_ != rhs.n_) throw invalid_input("RealSymplectic: dimension mismatch");
    return RealSymplectic(m_ * rhs.m_, n_);
}

RealSymplectic RealSymplectic::inverse() const {
    const RMat k = standard_form(n_);
    // g^{-1} = K^{-1} g^T K and K^{-1} = -K
    RMat inv = -k * m_.transpose() * k;
    return RealSymplectic(std::move(inv), n_);
}

namespace {

CMat j_matrix(int n) {
    const Complex i(0.0, 1.0);
    CMat j = CMat::Zero(2 * n, 2 * n);
    j.topLeftCorner(n, n) = CMat::Identity(n, n);
    j.topRightCorner(n, n) = i * CMat::Identity(n, n);
    j.bottomLeftCorner(n, n) = i * CMat::Identity(n, n);
    j.bottomRightCorner(n, n) = CMat::Identity(n, n);
    return j / std::sqrt(2.0);
}

BlockPair blocks_of(const RMat& g) {
    const int n = static_cast<int>(g.rows()) / 2;
    if (n == 1) {
        // closed form: Phi = ((a+d) + i(b-c))/2, Psi = ((b+c) + i(a-d))/2
        const double a = g(0, 0), b = g(0, 1), c = g(1, 0), d = g(1, 1);
        BlockPair bp;
        bp.phi = CMat::Constant(1, 1, Complex((a + d) / 2, (b - c) / 2));
        bp.psi = CMat::Constant(1, 1, Complex((b + c) / 2, (a - d) / 2));
        return bp;
    }
    const CMat j = j_matrix(n);
    const CMat m = j.adjoint() * g.cast<Complex>() * j;  // J is unitary, J^{-1} = J*
    BlockPair bp;
    bp.phi = m.topLeftCorner(n, n);
    bp.psi = m.topRightCorner(n, n);
    return bp;
}

}  // namespace

BlockPair to_blocks(const RealSymplectic& g) { return blocks_of(g.matrix()); }

BlockPair to_blocks_unchecked(const RMat& g) { return blocks_of(g); }

RealSymplectic from_blocks(const BlockPair& bp, double tol) {
    bp.validate(tol);
    const int n = bp.half_dim();
    CMat m(2 * n, 2 * n);
    m.topLeftCorner(n, n) = bp.phi;
    m.topRightCorner(n, n) = bp.psi;
    m.bottomLeftCorner(n, n) = bp.psi.conjugate();
    m.bottomRightCorner(n, n) = bp.phi.conjugate();
    const CMat j = j_matrix(n);
    const CMat g = j * m * j.adjoint();
    if (g.imag().norm() > tol * (1.0 + g.norm()))
        throw invalid_input("from_blocks: reconstruction is not real");
    return RealSymplectic::from_matrix(g.real(), kTolSymp);
}

namespace {

// Scaling-and-squaring matrix exponential with a norm-controlled Taylor tail;
// ample accuracy for |A| bounded by desk-scale spreads.
RMat expm(const RMat& a) {
    const double nrm = a.cwiseAbs().rowwise().sum().maxCoeff();  // inf-norm
    int squarings = 0;
    double scale = 1.0;
    while (nrm * scale > 0.25) {
        scale *= 0.5;
        ++squarings;
    }
    const RMat b = a * scale;
    const int dim = static_cast<int>(a.rows());
    RMat term = RMat::Identity(dim, dim);
    RMat sum = term;
    for (int k = 1; k <= 24; ++k) {
        term = RMat(term * b) / static_cast<double>(k);
        sum += term;
        if (term.norm() < 1e-18 * sum.norm()) break;
    }
    for (int k = 0; k < squarings; ++k) sum = RMat(sum * sum);
    return sum;
}

}  // namespace

RealSymplectic random_symplectic(int n, std::uint64_t seed, double spread) {
    if (n < 1 || n > 8) throw invalid_input("random_symplectic: need 1 <= n <= 8");
    if (spread < 0.0 || spread > 2.0) throw invalid_input("random_symplectic: need 0 <= spread <= 2");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-spread, spread);
    RMat s(2 * n, 2 * n);
    for (int i = 0; i < 2 * n; ++i)
        for (int j = i; j < 2 * n; ++j) {
            const double v = uni(rng);
            s(i, j) = v;
            s(j, i) = v;
        }
    const RMat g = expm(RMat(standard_form(n) * s));
    return RealSymplectic::from_matrix(g, kTolSymp);
}

IntegerSymplectic IntegerSymplectic::from_matrix(const IMat& m) {
    if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0)
        throw invalid_input("IntegerSymplectic: matrix must be square of even size");
    const int n = static_cast<int>(m.rows()) / 2;
    IMat k = IMat::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        k(i, n + i) = 1;
        k(n + i, i) = -1;
    }
    if (IMat(m.transpose() * k * m) != k)
        throw invalid_input("IntegerSymplectic: exact symplectic condition fails");
    return IntegerSymplectic(m, n);
}

RMat IntegerSymplectic::as_real() const { return m_.cast<double>(); }

IntegerSymplectic IntegerSymplectic::operator*(const IntegerSymplectic& rhs) const {
    if (n_ != rhs.n_) throw invalid_input("IntegerSymplectic: dimension mismatch");
    return IntegerSymplectic(m_ * rhs.m_, n_);
}

IntegerSymplectic IntegerSymplectic::inverse() const {
    IMat k = IMat::Zero(2 * n_, 2 * n_);
    for (int i = 0; i < n_; ++i) {
        k(i, n_ + i) = 1;
        k(n_ + i, i) = -1;
    }
    IMat inv = IMat(-k * m_.transpose() * k);
    return IntegerSymplectic(std::move(inv), n_);
}

IntegerSymplectic sl2_embed(const IMat2& h, int n) {
    if (h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0) != 1)
        throw invalid_input("sl2_embed: det must be exactly 1");
    if (n < 1 || n > 8) throw invalid_input("sl2_embed: need 1 <= n <= 8");
    IMat m = IMat::Identity(2 * n, 2 * n);
    m(0, 0) = h(0, 0);
    m(0, n) = h(0, 1);
    m(n, 0) = h(1, 0);
    m(n, n) = h(1, 1);
    return IntegerSymplectic::from_matrix(m);
}

TorsionGenerators torsion_generators() {
    TorsionGenerators g;
    g.I << 0, -1, 1, 0;
    g.J << 0, -1, 1, -1;
    g.K << 1, -1, 0, 1;
    const IMat2 id = IMat2::Identity();
    if (IMat2(g.I * g.I * g.I * g.I) != id) throw numerical_failure("torsion: I^4 != 1");
    if (IMat2(g.J * g.J * g.J) != id) throw numerical_failure("torsion: J^3 != 1");
    if (IMat2(g.I * g.K) != g.J) throw numerical_failure("torsion: IK != J");
    return g;
}

}  // namespace scc

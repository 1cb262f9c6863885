#pragma once

#include <cstdint>

#include "scc/errors.hpp"
#include "scc/linalg.hpp"

namespace scc {

/// Default symplectic-residual tolerance, scaled by (1 + |g|^2) at the call
/// sites; products of ~10 random factors stay within it.
inline constexpr double kTolSymp = 1e-9;

/// The standard skew form K = [[0, I], [-I, 0]] in the (n+n) block ordering.
RMat standard_form(int n);

struct SymplecticCheck {
    double residual;  // operator norm of g^T K g - K
    bool ok;          // residual <= tol * (1 + |g|^2)
};

/// Residual of the symplectic condition g^T K g = K.
/// Throws invalid_input for odd dimension or non-finite entries.
SymplecticCheck check_symplectic(const RMat& m, double tol = kTolSymp);

/// Complex blocks (Phi, Psi) of J^{-1} g J = [[Phi, Psi], [conj Psi, conj Phi]],
/// with J = (1/sqrt 2) [[1, i], [i, 1]] blockwise.  Phi is always invertible and
/// |Phi^{-1} Psi| < 1, |conj(Psi) Phi^{-1}| < 1.
struct BlockPair {
    CMat phi;
    CMat psi;

    int half_dim() const { return static_cast<int>(phi.rows()); }

    /// Residual of PhiPhi* - PsiPsi* = 1 and Phi*Phi - Psi^T conj(Psi) = 1.
    double relation_residual() const;
    /// max(|Phi^{-1} Psi|, |conj(Psi) Phi^{-1}|); < 1 for genuine blocks.
    double contraction_norm() const;
    void validate(double tol = 1e-9) const;
};

/// A real 2n x 2n matrix validated against g^T K g = K.
class RealSymplectic {
  public:
    static RealSymplectic from_matrix(const RMat& m, double tol = kTolSymp);
    /// Skips the residual check; for matrices produced by group operations on
    /// already-validated elements (inner loops).
    static RealSymplectic from_matrix_unchecked(const RMat& m);
    static RealSymplectic identity(int n);

    const RMat& matrix() const { return m_; }
    int half_dim() const { return n_; }

    RealSymplectic operator*(const RealSymplectic& rhs) const;
    RealSymplectic inverse() const;  // K^{-1} g^T K, exact group inverse

  private:
    RealSymplectic(RMat m, int n) : m_(std::move(m)), n_(n) {}
    RMat m_;
    int n_;
};

/// J-conjugation g -> (Phi, Psi).  For n = 1 and g = [[a,b],[c,d]]:
/// Phi = ((a+d) + i(b-c))/2, Psi = ((b+c) + i(a-d))/2, so Phi(R(theta)) = e^{-i theta}.
BlockPair to_blocks(const RealSymplectic& g);
/// Same, on a raw matrix the caller has already validated (quadrature loops).
BlockPair to_blocks_unchecked(const RMat& g);

/// Inverse of the J-conjugation.  Throws invalid_input if the blocks violate
/// their relations or the reconstruction is not real.
RealSymplectic from_blocks(const BlockPair& bp, double tol = 1e-9);

/// exp(K S) for S random symmetric with entries uniform in [-spread, spread];
/// deterministic in seed.  Requires n <= 8 and spread <= 2.
RealSymplectic random_symplectic(int n, std::uint64_t seed, double spread);

/// An integer symplectic matrix; the condition g^T K g = K holds exactly.
class IntegerSymplectic {
  public:
    static IntegerSymplectic from_matrix(const IMat& m);
    const IMat& matrix() const { return m_; }
    RMat as_real() const;
    int half_dim() const { return n_; }
    IntegerSymplectic operator*(const IntegerSymplectic& rhs) const;
    IntegerSymplectic inverse() const;

  private:
    IntegerSymplectic(IMat m, int n) : m_(std::move(m)), n_(n) {}
    IMat m_;
    int n_;
};

/// Places a 2x2 integer matrix with det 1 into the (1, n+1) coordinate pair of
/// Sp(2n, Z): entries go to positions (1,1), (1,n+1), (n+1,1), (n+1,n+1).
IntegerSymplectic sl2_embed(const IMat2& h, int n);

/// The SL(2, Z) torsion generators I = [[0,-1],[1,0]], J = [[0,-1],[1,-1]],
/// K = [[1,-1],[0,1]]; the relations I^4 = 1, J^3 = 1, IK = J are asserted in
/// exact integer arithmetic on construction.
struct TorsionGenerators {
    IMat2 I;
    IMat2 J;
    IMat2 K;
};
TorsionGenerators torsion_generators();

}  // namespace scc

#pragma once

#include <string>
#include <vector>

#include "scc/symplectic.hpp"

namespace scc {

/// z -> (a + zc)^{-1} (b + zd) on the upper half plane, for g = [[a,b],[c,d]]
/// real with det 1.  A right action: z^[g1 g2] = (z^[g1])^[g2].
Complex mobius_halfplane(const Eigen::Matrix2d& g, Complex z);

/// z -> (Phi + z conj(Psi))^{-1} (Psi + z conj(Phi)) on the Cartan matrix
/// ball of complex symmetric matrices with norm < 1.
CMat mobius_disk(const BlockPair& bp, const CMat& z);

/// det(1 + z conj(Psi) Phi^{-1})^{-alpha} via the principal tr-log; single
/// valued because |z conj(Psi) Phi^{-1}| < 1.
Complex normalized_multiplier_disk(const BlockPair& bp, const CMat& z, double alpha);

/// (a + zc)^{-alpha} for the half-plane model.  Standalone calls use the
/// principal branch arg in (-pi, pi]; a + zc on the negative real axis with
/// noninteger alpha throws branch_ambiguity (a path context is needed there).
Complex multiplier_halfplane(const Eigen::Matrix2d& g, Complex z, double alpha);

/// Generator symbols of the SL(2,Z) holonomy words.
enum class GenSymbol { I, J, K, Iinv, Jinv, Kinv };

/// Parses a comma list like "I,I,I,I" or "K,K^-1".
std::vector<GenSymbol> parse_word(const std::string& csv);

/// Multiplier holonomy of a relation word: the word must evaluate to the
/// identity in exact integer arithmetic.  Generators use the theta = 1
/// normalization (unipotent multiplier is exactly 1); inverse symbols apply
/// the inverse operator, so no new branch choices arise.  Evaluated at the
/// natural fixed point for pure powers of I or J, else at z0 = 2i, and
/// revalidated at a second base point.
Complex holonomy(const std::vector<GenSymbol>& word, double alpha);

struct ObstructionReport {
    Complex holonomy_i4;
    Complex holonomy_j3;
    double deviation;  // |holonomy_i4 - 1|
    bool nontrivial;   // deviation > 1e-9
};

/// The computational witness for nontriviality of c_alpha on SL(2,Z):
/// holonomies of I^4 and J^3 equal e^{-2 pi i alpha}, which differs from 1
/// exactly when alpha is not an integer.
ObstructionReport obstruction_witness(double alpha);

}  // namespace scc

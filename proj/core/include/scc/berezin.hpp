#pragma once

#include "scc/symplectic.hpp"

namespace scc {

/// Full complex value of tr ln[Phi(g1)^{-1} Phi(g1 g2) Phi(g2)^{-1}]
///  = tr ln(1 + Phi(g1)^{-1} Psi(g1) conj(Psi(g2)) Phi(g2)^{-1}).
/// Its imaginary part is the cocycle, its real part the trivial cocycle.
Complex cocycle_trlog(const BlockPair& b1, const BlockPair& b2);

/// The group 2-cocycle c(g1, g2) = Im cocycle_trlog; satisfies |c| < n pi/2.
double cocycle_c(const RealSymplectic& g1, const RealSymplectic& g2);
double cocycle_c(const BlockPair& b1, const BlockPair& b2);

/// gamma(g) = arg det Phi(g), taken in [0, 2pi).
double trivializer_gamma(const RealSymplectic& g);
double trivializer_gamma(const BlockPair& b);

/// Nearest integer to (c(g1,g2) + gamma(g1) + gamma(g2) - gamma(g1 g2)) / 2pi.
/// Throws numerical_failure if the pre-rounding residual exceeds 1e-6 (a
/// silent wrong integer would be worse than an error).
long integer_class(const RealSymplectic& g1, const RealSymplectic& g2);

/// Berezin's multiplicative cocycle sigma = det(1+Z)^{-1/2} = exp(-trlog/2);
/// arg sigma == -c/2 mod 2pi by construction.
Complex berezin_sigma(const RealSymplectic& g1, const RealSymplectic& g2);

/// sigma_alpha = exp(-alpha * cocycle_trlog); single-valued determinant power
/// for integer alpha.
Complex sigma_alpha(const RealSymplectic& g1, const RealSymplectic& g2, double alpha);

/// A point (g, x) of the universal cover: e^{ix} = det Phi(g) / |det Phi(g)|.
struct CoverElement {
    RealSymplectic g;
    double x;
};

/// Validates the phase condition to 1e-9 and returns the element.
CoverElement make_cover_element(const RealSymplectic& g, double x);

/// (g1 g2, x1 + x2 + c(g1, g2)); the output phase condition is revalidated.
CoverElement cover_mul(const CoverElement& e1, const CoverElement& e2);

/// The element over g(y) with Phi = diag(e^{iy}, 1, ..., 1), Psi = 0 and x = y;
/// y = 2pi gives the nontrivial deck transformation over the identity.
CoverElement loop_lift(double y, int n = 1);

}  // namespace scc

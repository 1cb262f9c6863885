#include "scc/lattice.hpp"

#include <cmath>
#include <numbers>

#include "scc/matcalc.hpp"

namespace scc {

namespace {
constexpr double kPi = std::numbers::pi;
}

Complex mobius_halfplane(const Eigen::Matrix2d& g, Complex z) {
    if (std::abs(g.determinant() - 1.0) > 1e-12)
        throw invalid_input("mobius_halfplane: det must be 1");
    if (z.imag() <= 0.0) throw domain_violation("mobius_halfplane: Im z must be positive");
    const Complex denom = g(0, 0) + z * g(1, 0);
    if (denom == Complex(0.0))
        throw numerical_failure("mobius_halfplane: a + zc vanished");  // impossible for Im z > 0
    const Complex w = (g(0, 1) + z * g(1, 1)) / denom;
    if (w.imag() <= 0.0)
        throw numerical_failure("mobius_halfplane: image left the upper half plane");
    return w;
}

CMat mobius_disk(const BlockPair& bp, const CMat& z) {
    if (z.rows() != z.cols() || z.rows() != bp.half_dim())
        throw invalid_input("mobius_disk: dimension mismatch");
    if ((z - z.transpose()).norm() > 1e-9 * (1.0 + z.norm()))
        throw invalid_input("mobius_disk: z must be symmetric");
    if (operator_norm(z) >= 1.0) throw domain_violation("mobius_disk: |z| >= 1");
    const CMat denom = bp.phi + z * bp.psi.conjugate();
    CMat w = denom.partialPivLu().solve(bp.psi + z * bp.phi.conjugate());
    w = CMat((w + w.transpose()) / 2.0);  // symmetric up to rounding
    if (operator_norm(w) >= 1.0)
        throw numerical_failure("mobius_disk: image left the matrix ball");
    return w;
}

Complex normalized_multiplier_disk(const BlockPair& bp, const CMat& z, double alpha) {
    if (z.rows() != z.cols() || z.rows() != bp.half_dim())
        throw invalid_input("normalized_multiplier_disk: dimension mismatch");
    if (operator_norm(z) >= 1.0) throw domain_violation("normalized_multiplier_disk: |z| >= 1");
    const CMat m = CMat(z * CMat(bp.psi.conjugate() * bp.phi.inverse()));
    return std::exp(-alpha * tr_log_one_plus(m));
}

Complex multiplier_halfplane(const Eigen::Matrix2d& g, Complex z, double alpha) {
    if (z.imag() <= 0.0) throw domain_violation("multiplier_halfplane: Im z must be positive");
    const Complex w = g(0, 0) + z * g(1, 0);
    if (w == Complex(0.0)) throw numerical_failure("multiplier_halfplane: a + zc vanished");
    if (w.imag() == 0.0 && w.real() < 0.0) {
        if (std::abs(alpha - std::round(alpha)) > 1e-12)
            throw branch_ambiguity(
                "multiplier_halfplane: a + zc is real negative; supply a path context");
    }
    if (w.imag() > 0.0) return principal_power(w, alpha, Branch::upper_half_plane);
    return principal_power(w, alpha, Branch::principal);
}

std::vector<GenSymbol> parse_word(const std::string& csv) {
    std::vector<GenSymbol> word;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        std::size_t comma = csv.find(',', pos);
        if (comma == std::string::npos) comma = csv.size();
        std::string tok = csv.substr(pos, comma - pos);
        // trim spaces
        while (!tok.empty() && tok.front() == ' ') tok.erase(tok.begin());
        while (!tok.empty() && tok.back() == ' ') tok.pop_back();
        if (tok == "I")
            word.push_back(GenSymbol::I);
        else if (tok == "J")
            word.push_back(GenSymbol::J);
        else if (tok == "K")
            word.push_back(GenSymbol::K);
        else if (tok == "I^-1")
            word.push_back(GenSymbol::Iinv);
        else if (tok == "J^-1")
            word.push_back(GenSymbol::Jinv);
        else if (tok == "K^-1")
            word.push_back(GenSymbol::Kinv);
        else if (!tok.empty())
            throw invalid_input("parse_word: unknown symbol '" + tok + "'");
        pos = comma + 1;
        if (comma == csv.size()) break;
    }
    if (word.empty()) throw invalid_input("parse_word: empty word");
    return word;
}

namespace {

IMat2 symbol_matrix(GenSymbol s) {
    const TorsionGenerators gen = torsion_generators();
    switch (s) {
        case GenSymbol::I: return gen.I;
        case GenSymbol::J: return gen.J;
        case GenSymbol::K: return gen.K;
        case GenSymbol::Iinv: return IMat2(gen.I * gen.I * gen.I);            // I^4 = 1
        case GenSymbol::Jinv: return IMat2(gen.J * gen.J);                    // J^3 = 1
        case GenSymbol::Kinv: {
            IMat2 k;
            k << 1, 1, 0, 1;
            return k;
        }
    }
    throw invalid_input("symbol_matrix: bad symbol");
}

bool is_inverse_symbol(GenSymbol s) {
    return s == GenSymbol::Iinv || s == GenSymbol::Jinv || s == GenSymbol::Kinv;
}

GenSymbol direct_of(GenSymbol s) {
    switch (s) {
        case GenSymbol::Iinv: return GenSymbol::I;
        case GenSymbol::Jinv: return GenSymbol::J;
        case GenSymbol::Kinv: return GenSymbol::K;
        default: return s;
    }
}

Eigen::Matrix2d as_real2(const IMat2& m) { return m.cast<double>(); }

// Accumulated multiplier of the word at base point z0; z is tracked through
// the right action, each direct symbol contributes (a + zc)^{-alpha} with the
// theta = 1 normalization, inverse symbols apply the inverse operator.
Complex holonomy_at(const std::vector<GenSymbol>& word, double alpha, Complex z0) {
    Complex scalar = 1.0;
    Complex z = z0;
    for (GenSymbol s : word) {
        if (!is_inverse_symbol(s)) {
            const Eigen::Matrix2d g = as_real2(symbol_matrix(s));
            scalar *= multiplier_halfplane(g, z, alpha);
            z = mobius_halfplane(g, z);
        } else {
            const Eigen::Matrix2d g = as_real2(symbol_matrix(direct_of(s)));
            const Eigen::Matrix2d gi = as_real2(symbol_matrix(s));
            const Complex zn = mobius_halfplane(gi, z);  // z^[g^-1]
            scalar /= multiplier_halfplane(g, zn, alpha);
            z = zn;
        }
    }
    return scalar;
}

bool all_same_symbol(const std::vector<GenSymbol>& word, GenSymbol s) {
    for (GenSymbol w : word)
        if (w != s) return false;
    return true;
}

}  // namespace

Complex holonomy(const std::vector<GenSymbol>& word, double alpha) {
    if (word.empty()) throw invalid_input("holonomy: empty word");
    IMat2 prod = IMat2::Identity();
    for (GenSymbol s : word) prod = IMat2(prod * symbol_matrix(s));
    if (prod != IMat2::Identity())
        throw invalid_input("holonomy: word is not a relation in SL(2,Z)");

    Complex z0(0.0, 2.0);
    if (all_same_symbol(word, GenSymbol::I) || all_same_symbol(word, GenSymbol::Iinv))
        z0 = Complex(0.0, 1.0);  // fixed point of z -> -1/z
    else if (all_same_symbol(word, GenSymbol::J) || all_same_symbol(word, GenSymbol::Jinv))
        z0 = std::polar(1.0, 2 * kPi / 3);  // fixed point of z -> -1 - 1/z

    const Complex h = holonomy_at(word, alpha, z0);
    const Complex h2 = holonomy_at(word, alpha, Complex(0.5, 1.5));
    if (std::abs(h - h2) > 1e-9)
        throw numerical_failure("holonomy: relator period depends on the base point");
    return h;
}

ObstructionReport obstruction_witness(double alpha) {
    if (alpha <= 0.0) throw invalid_input("obstruction_witness: alpha must be positive");
    ObstructionReport rep;
    rep.holonomy_i4 = holonomy(std::vector<GenSymbol>(4, GenSymbol::I), alpha);
    rep.holonomy_j3 = holonomy(std::vector<GenSymbol>(3, GenSymbol::J), alpha);
    rep.deviation = std::abs(rep.holonomy_i4 - Complex(1.0));
    rep.nontrivial = rep.deviation > 1e-9;
    return rep;
}

}  // namespace scc

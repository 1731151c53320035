#pragma once

#include "conelab/clan.hpp"
#include "conelab/group.hpp"

#include <cstdint>
#include <vector>

namespace conelab {

/// A representation phi: V -> Sym(E) of the dual clan (V, (v)), given by one
/// operator matrix per basis vector of V, together with the quadratic map Q it
/// induces through <phi(x) xi, eta>_E = <x, Q(xi, eta)>_V.
///
/// The E basis is ordered by blocks E_1, ..., E_r with E_i = phi(c_i) E. Lower and
/// upper halves of an operator are taken block-wise: the block strictly lower
/// part plus half of the diagonal blocks.
class QuadraticRep {
public:
    QuadraticRep() = default;
    QuadraticRep(Clan clan, std::vector<std::size_t> blocks, Matrix gram_e, std::vector<Matrix> phi);

    const Clan& clan() const noexcept { return clan_; }
    std::size_t dim_e() const noexcept { return gram_e_.rows(); }
    const std::vector<std::size_t>& blocks() const noexcept { return blocks_; }
    /// Half-open index range of block E_j (1-based j).
    std::pair<std::size_t, std::size_t> block_range(int j) const;
    const Matrix& gram_e() const noexcept { return gram_e_; }
    const std::vector<Matrix>& phi_basis() const noexcept { return phi_; }

    Matrix phi(const RVector& x) const;
    Matrix lower_half(const Matrix& op) const;
    Matrix upper_half(const Matrix& op) const { return op - lower_half(op); }

    Rational inner_e(const RVector& xi, const RVector& eta) const;
    Rational norm_e(const RVector& xi) const { return inner_e(xi, xi); }

    RVector q_bilinear(const RVector& xi, const RVector& eta) const;
    RVector q(const RVector& xi) const { return q_bilinear(xi, xi); }

    /// phi(c_1) xi, the orthogonal projection onto E_1.
    RVector project_first(const RVector& xi) const;

private:
    Clan clan_;
    std::vector<std::size_t> blocks_;
    Matrix gram_e_;
    std::vector<Matrix> phi_;
    Matrix gram_v_inv_;
    std::vector<Matrix> pairing_; // phi(e_a)^T G_E
};

/// Sym(m) acting on E = R^{m x columns}, phi(x) = x (x) I_columns.
QuadraticRep build_sym_column_rep(int m, int columns = 1);

/// V' acting on E = V^[1] of a clan, with Q[xi] = xi * xi computed in the clan
/// and the inner products inherited from it.
QuadraticRep build_first_column_rep(const Clan& clan);

/// build_first_column_rep of the dual Vinberg clan: a diagonal rank-2 clan on
/// E = span{a21, a31}.
QuadraticRep build_dual_vinberg_prime_rep();

/// "sym:m" or "sym:m:cols", "dual-vinberg-prime".
QuadraticRep builtin_rep(const std::string& name);

struct RepValidationOptions {
    std::size_t samples = 16;
    std::uint64_t seed = 0;
};

/// Structural checks are exact; positivity is certified on sampled points only.
ValidationReport validate_rep(const QuadraticRep& rep, const RepValidationOptions& options = {});
/// The exact subset of validate_rep (no sampling).
ValidationReport validate_rep_structure(const QuadraticRep& rep);

/// Structure constants of W = E + V: (xi1 + x1)(xi2 + x2) = phi_(x1) xi2 + 2 Q(xi1, xi2) + x1 x2.
/// Basis order: E first, then V. s0 extends by zero on E.
Algebra build_w(const QuadraticRep& rep);

/// Multiplication table of W against the blocks E_1, E', V^[1]; one check per cell.
ValidationReport w_block_table(const QuadraticRep& rep);

/// The restriction of a rep to V' when E_1 = {0}: same E, operators phi(x'), x' in V'.
QuadraticRep restrict_to_tail(const QuadraticRep& rep);

struct SplitData {
    RVector xi;
    Rational scalar;                   // |xi|^2_E / s0(c_1)
    std::vector<std::size_t> column;   // indices of V^[1] in V
    Matrix r;                          // E x V^[1]: v -> phi_(v) xi
    Matrix r_star;                     // V^[1] x E: a -> 2 Q(a, xi), restricted to V^[1]
    std::vector<RVector> image;        // basis of Image r_xi (E coordinates)
    std::vector<RVector> kernel;       // basis of Ker r*_xi in E', block ordered
    QuadraticRep restricted;           // phi~ on Ker r*_xi over V'
    ValidationReport checks;
};

/// Decomposes E' = Image r_xi (+) Ker r*_xi for a nonzero xi in E_1 and builds
/// the restricted representation. Throws std::invalid_argument if xi = 0 or
/// xi is not in E_1.
SplitData split(const QuadraticRep& rep, const RVector& xi);

struct SplitParts {
    RVector a;        // in Image r_xi
    RVector b;        // in Ker r*_xi
    RVector b_coords; // b in the kernel basis
};

/// nu' = nu - phi(c_1) nu written as a + b.
SplitParts decompose(const QuadraticRep& rep, const SplitData& split, const RVector& nu);

/// r*_xi(a) as a full V vector.
RVector r_star_apply(const QuadraticRep& rep, const SplitData& split, const RVector& a);

} // namespace conelab

#pragma once

#include "conelab/matrix.hpp"
#include "conelab/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace conelab {

/// Weight of a basis vector: it spans part of V_kj, 1 <= j <= k <= r.
struct Weight {
    int j = 1;
    int k = 1;

    bool is_diagonal() const noexcept { return j == k; }
    friend bool operator==(const Weight&, const Weight&) = default;
};

/// Canonical basis order: (k, j) lexicographic, i.e. V11, V21, V22, V31, V32, V33, ...
bool canonical_before(const Weight& a, const Weight& b) noexcept;

struct StructureConstant {
    std::size_t a = 0;
    std::size_t b = 0;
    std::size_t c = 0;
    Rational value;
};

/// A finite-dimensional algebra given by structure constants
/// (x*y)_c = sum_{a,b} x_a y_b C[a][b][c] and a linear form s0.
/// No unit or grading is assumed.
class Algebra {
public:
    Algebra() = default;
    Algebra(std::size_t dim, std::vector<StructureConstant> constants, RVector s0);

    std::size_t dim() const noexcept { return dim_; }
    const RVector& s0() const noexcept { return s0_; }

    /// Nonzero constants sorted by (a, b, c).
    const std::vector<StructureConstant>& constants() const noexcept { return constants_; }

    const RVector& basis_product(std::size_t a, std::size_t b) const { return table_.at(a * dim_ + b); }

    RVector product(const RVector& x, const RVector& y) const;
    Matrix left_mult(const RVector& x) const;
    Matrix left_mult_basis(std::size_t a) const;

    /// G_ab = s0(e_a * e_b).
    Matrix gram() const;
    Rational inner(const RVector& x, const RVector& y) const;
    Rational apply_s0(const RVector& x) const { return dot(s0_, x); }

private:
    void check_dim(const RVector& x, const char* what) const;

    std::size_t dim_ = 0;
    std::vector<StructureConstant> constants_;
    std::vector<RVector> table_;
    RVector s0_;
};

/// Graded unital Vinberg algebra (clan). Basis is stored in canonical weight
/// order with exactly one basis vector c_j of weight (j, j) per level.
class Clan {
public:
    Clan() = default;
    Clan(std::size_t rank, std::vector<Weight> weights, Algebra algebra);

    std::size_t rank() const noexcept { return rank_; }
    std::size_t dim() const noexcept { return algebra_.dim(); }
    const Algebra& algebra() const noexcept { return algebra_; }
    const std::vector<Weight>& weights() const noexcept { return weights_; }
    const Weight& weight(std::size_t i) const { return weights_.at(i); }
    const RVector& s0() const noexcept { return algebra_.s0(); }

    /// Basis index of the primitive idempotent c_j (1-based j).
    std::size_t idempotent_index(int j) const { return idempotent_index_.at(static_cast<std::size_t>(j - 1)); }
    RVector idempotent(int j) const { return unit_vector(dim(), idempotent_index(j)); }
    RVector unit() const;

    /// Basis indices spanning V_kj, in basis order.
    std::vector<std::size_t> weight_space(int j, int k) const;
    std::size_t weight_space_dim(int j, int k) const { return weight_space(j, k).size(); }

    RVector product(const RVector& x, const RVector& y) const { return algebra_.product(x, y); }
    Matrix left_mult(const RVector& x) const { return algebra_.left_mult(x); }
    Rational inner(const RVector& x, const RVector& y) const { return algebra_.inner(x, y); }
    Matrix gram() const { return algebra_.gram(); }

    /// Indices of V^[1] = sum_{k>=2} V_k1.
    std::vector<std::size_t> first_column() const;
    /// Indices of V' = sum_{2<=j<=k} V_kj.
    std::vector<std::size_t> tail() const;

private:
    std::size_t rank_ = 0;
    std::vector<Weight> weights_;
    Algebra algebra_;
    std::vector<std::size_t> idempotent_index_;
};

/// The rank-(r-1) clan V' together with the embedding of its basis into V.
struct SubClan {
    Clan clan;
    std::vector<std::size_t> embedding;
};

SubClan tail_subclan(const Clan& clan);

RVector restrict_to(const RVector& x, const std::vector<std::size_t>& indices);
RVector embed(const RVector& x, const std::vector<std::size_t>& indices, std::size_t dim);

struct Check {
    std::string name;
    bool passed = true;
    std::string witness;
};

struct ValidationReport {
    std::vector<Check> checks;

    bool passed() const;
    void add(std::string name, bool ok, std::string witness = {});
    const Check* find(const std::string& name) const;
};

/// Weight space a product of the two weights lands in under the multiplication
/// rules; {0, 0} when the product must vanish.
Weight allowed_product_weight(const Weight& left, const Weight& right) noexcept;

/// Checks left symmetry on all basis pairs. Shared by clans and the extended algebra W.
void check_left_symmetry(const Algebra& algebra, ValidationReport& report, const std::string& name = "V1 left symmetry");
void check_compactness(const Algebra& algebra, ValidationReport& report, const std::string& name = "V2 compactness");

ValidationReport validate_axioms(const Clan& clan);

/// The product x (v) y defined by <x (v) y, z> = <y, x * z>, in the same basis.
Algebra dual_product(const Clan& clan);

/// Dual clan (V, (v)). Its idempotent order is reversed (c_r, ..., c_1), so the
/// basis is permuted into canonical order; permutation[new] = old index.
struct DualClan {
    Clan clan;
    std::vector<std::size_t> permutation;
};
DualClan dual_algebra(const Clan& clan);

/// Normal decomposition data: one entry per weight space in canonical order.
struct WeightSpace {
    Weight weight;
    std::vector<RVector> basis;
};

struct Grading {
    std::size_t rank = 0;
    std::vector<WeightSpace> spaces;
    /// Columns are the adapted basis in the input coordinates.
    Matrix basis_change;

    std::size_t dim(int j, int k) const;
};

class DecompositionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Solves L_{c_i} x = 1/2 (d_ij + d_ik) x, x * c_i = d_ij x for every weight.
Grading normal_decomposition(const Algebra& algebra, const std::vector<RVector>& idempotents);
Grading normal_decomposition(const Clan& clan);

/// Rewrites an ungraded algebra in the adapted basis of its normal decomposition.
Clan graded_clan(const Algebra& algebra, const std::vector<RVector>& idempotents);

} // namespace conelab

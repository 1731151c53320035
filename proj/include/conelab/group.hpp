#pragma once

#include "conelab/clan.hpp"
#include "conelab/surd.hpp"

#include <optional>
#include <vector>

namespace conelab {

/// Element of the simply transitive group H in factorized coordinates
///   h = exp(t_1 L_{c_1}) exp(L_{v_1}) exp(t_2 L_{c_2}) ... exp(L_{v_{r-1}}) exp(t_r L_{c_r}),
/// with h_j = e^{t_j/2} > 0 and v_j in sum_{k>j} V_kj.
///
/// Exact mode stores h_j^2 and the scaled off-diagonal part w_j = h_j v_j; both are
/// rational for every element produced by peeling or orbit reconstruction.
struct GroupElement {
    RVector h_squared;
    std::vector<RVector> scaled_nilpotent; // r - 1 vectors in full V coordinates

    static GroupElement identity(const Clan& clan);
};

/// Floating-point coordinates (h_j, v_j) without scaling.
struct FloatGroupElement {
    std::vector<double> h;
    std::vector<std::vector<double>> nilpotent;
};

FloatGroupElement to_float(const GroupElement& g);

/// Throws std::invalid_argument on nonpositive diagonal or a v_j supported
/// outside sum_{k>j} V_kj.
void check_group_element(const Clan& clan, const GroupElement& g);

/// rho(g) x, exact over Q(h_1, ..., h_r).
SVector act(const Clan& clan, const GroupElement& g, const SVector& x);
SVector act(const Clan& clan, const GroupElement& g, const RVector& x);
/// rho(g) x when the result is rational; throws std::domain_error otherwise.
RVector act_rational(const Clan& clan, const GroupElement& g, const RVector& x);
std::vector<double> act(const Clan& clan, const FloatGroupElement& g, const std::vector<double>& x);

/// rho(g)^{-1} x.
SVector act_inverse(const Clan& clan, const GroupElement& g, const SVector& x);

/// rho*(g) y, the contragredient action: <rho(g) x, rho*(g) y> = <x, y>.
SVector act_dual(const Clan& clan, const GroupElement& g, const RVector& y);

/// Inner product <x, y>_V for field-valued vectors.
Surd inner(const Clan& clan, const SurdField& field, const SVector& x, const SVector& y);

enum class Membership { Interior, Boundary, Outside };

const char* to_string(Membership m);

struct MembershipResult {
    Membership kind = Membership::Outside;
    /// Coordinates with rho(h) e_V = x, present for Interior.
    std::optional<GroupElement> coordinates;
    /// 1-based level where the peel failed (Outside) or first vanished (Boundary).
    int level = 0;
};

/// Recursive peeling x = l c_1 + x1 + x' -> x' - x1*x1 / (2 l) on V'.
MembershipResult peel_membership(const Clan& clan, const RVector& x);

} // namespace conelab

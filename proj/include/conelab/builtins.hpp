#pragma once

#include "conelab/clan.hpp"

#include <string>

namespace conelab {

/// Index of the Sym(m) basis vector e_kj (1 <= j <= k), in canonical order.
inline std::size_t sym_index(int k, int j) { return static_cast<std::size_t>(k * (k - 1) / 2 + (j - 1)); }

/// Coordinates of a symmetric matrix in the basis e_jj = E_jj, e_kj = E_kj + E_jk.
RVector sym_coords(const Matrix& symmetric);
Matrix sym_matrix(const RVector& coords, int m);

/// Symmetric m x m matrices with x*y = x_ y + y x^ (x_ lower half, x^ = x_^T),
/// s0 = trace.
Clan build_sym_clan(int m);

/// Rank 3, basis c1, a21, c2, a31, c3; a21*a21 = c2, a31*a31 = c3, V32 = 0,
/// s0 = sum of diagonal coordinates.
Clan build_dual_vinberg_clan();

Clan build_rank1_clan();

/// Commutative clan R^r, c_j c_k = delta_jk c_j, all off-diagonal spaces zero.
Clan build_diagonal_clan(int rank);

/// "sym:m", "dual-vinberg", "rank1", "diagonal:r"; throws std::invalid_argument otherwise.
Clan builtin_clan(const std::string& name);

} // namespace conelab

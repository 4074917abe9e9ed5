#pragma once

#include "tatespace/spaces.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace tatespace {

/// Fixed diagonal enumeration of N x N: (1,1),(1,2),(2,1),(1,3),(2,2),(3,1),...
/// Indices here are 0-based.
struct PairIndexing {
    static std::pair<std::size_t, std::size_t> at(std::size_t k);
    static std::size_t index_of(std::size_t i, std::size_t j);
    /// Checks bijectivity of at/index_of on the first `count` values.
    static bool verify_prefix(std::size_t count);
};

/// In-range pairs (i < len_a, j < len_b) in diagonal order; finite when both are.
LazySeq<std::pair<std::size_t, std::size_t>> paired_indices(std::optional<std::size_t> len_a,
                                                            std::optional<std::size_t> len_b);

/// Diagonal cofinal subsystem of lim_{i,j} A_i (x) B_j: level n is A_n (x) B_n.
Tower tensor_star_towers(const Tower& a, const Tower& b);
/// Diagonal cofinal subsystem of colim_{i,j} A_i (x) B_j.
IndTower tensor_indtowers(const IndTower& a, const IndTower& b);
/// Summands A_k (x)* B_m enumerated by paired_indices.
IndLCObj tensor_star_indlc(const IndLCObj& a, const IndLCObj& b);
/// Factors A_i (x) B_j enumerated by paired_indices.
ProDiscObj tensor_bang_prodisc(const ProDiscObj& a, const ProDiscObj& b);

/// V = colim (L (+) F): the c-lattice followed by the finite increments of the
/// d-lattice as constant towers. When the d-lattice has a stabilizing tail
/// the list is finite and zero-dimensional pieces are dropped.
IndLCObj embed_tate_indlc(const TateObj& v);
/// V = lim (L/U (+) D): the d-lattice followed by the finite quotient
/// increments of the c-lattice as constant ind-towers (same finiteness rule).
ProDiscObj embed_tate_prodisc(const TateObj& v);

/// The outputs are tagged IndLC / ProDisc, never Tate: completed tensor
/// products of Tate spaces need not be Tate.
IndLCObj tensor_star_tate(const TateObj& a, const TateObj& b);
ProDiscObj tensor_bang_tate(const TateObj& a, const TateObj& b);

/// Hom(A, B) presented as A^* (x)! B, with the evaluation maps
/// phi (x) b |-> (a |-> phi(a) b) on the first `depth` factors and levels.
struct HomPresentation {
    ProDiscObj presentation;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  ///< (factor of A^*, factor of B)
    /// ev[k][n]: level-n tensors of factor k -> row-major vec of Hom(X, Y)
    std::vector<std::vector<Matrix>> ev;
    /// hom_dims[k][n] = dim X * dim Y
    std::vector<std::vector<std::size_t>> hom_dims;
};

/// Ev is checked on every rank-one basis tensor, for injectivity and for
/// compatibility with transitions before returning (CertificateError otherwise).
HomPresentation hom_via_tensor(const TateObj& a, const TateObj& b, std::size_t depth);

struct TensorDualityReport {
    bool ok = false;
    std::optional<std::size_t> first_bad_piece;  ///< 1-based
    std::optional<std::size_t> first_bad_level;  ///< 1-based
    std::vector<std::pair<std::size_t, std::size_t>> alignment;
};

/// (A (x)* B)^* against A^* (x)! B^*, piecewise and levelwise.
TensorDualityReport check_tensor_duality(const IndLCObj& a, const IndLCObj& b, std::size_t depth);

/// P with P (x (x) y) = y (x) x for x in k^m, y in k^n.
Matrix swap_permutation(FieldSpec field, std::size_t m, std::size_t n);

/// Bilinear map A x B -> C as a dim C x (dim A * dim B) matrix, curried to
/// A -> Hom(B, C) with Hom(B, C) vectorized row-major.
Matrix curry(const Matrix& bilinear, std::size_t dim_a, std::size_t dim_b);
/// Inverse of curry; needs dim B >= 1 (ShapeError otherwise).
Matrix uncurry(const Matrix& curried, std::size_t dim_a, std::size_t dim_b);

/// Levelwise comparison A (x)* (B (x)! C) -> (A (x)* B) (x)! C for towers,
/// where all topologies agree; verified to intertwine the transitions.
std::vector<Matrix> mixed_comparison(const Tower& a, const Tower& b, const Tower& c, std::size_t depth);

}  // namespace tatespace

#pragma once

#include "tatespace/matrix.hpp"
#include "tatespace/spaces.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tatespace {

/// Finite grid V[r][c], r = 0..m-1 (row r encodes action index -(r+1), row 0
/// least negative), c = 0..n-1. Maps go right along a row and up towards
/// row 0:
///   right[r][c] : V[r][c]   -> V[r][c+1]   (c < n-1)
///   up[r][c]    : V[r+1][c] -> V[r][c]     (r < m-1)
/// Reports use 1-based (row, column) indices.
struct BidirectedGrid {
    FieldSpec field{2};
    std::size_t m = 0;
    std::size_t n = 0;
    std::vector<std::vector<std::size_t>> dims;
    std::vector<std::vector<Matrix>> right;  ///< m rows of n-1 maps
    std::vector<std::vector<Matrix>> up;     ///< m-1 rows of n maps

    friend bool operator==(const BidirectedGrid&, const BidirectedGrid&) = default;
};

/// Short exact sequences 0 -> V_c -> V[r][c] -> W_r -> 0 forming a map of
/// bidirected systems: V_c is a direct system along columns (constant along
/// rows), W_r an inverse system along rows (constant along columns).
struct SESWitness {
    std::vector<std::size_t> v_dims;
    std::vector<Matrix> v_maps;  ///< v_maps[c] : V_c -> V_{c+1}
    std::vector<std::size_t> w_dims;
    std::vector<Matrix> w_maps;  ///< w_maps[r] : W_{r+1} -> W_r
    std::vector<std::vector<Matrix>> inj;   ///< V_c -> V[r][c]
    std::vector<std::vector<Matrix>> surj;  ///< V[r][c] -> W_r

    friend bool operator==(const SESWitness&, const SESWitness&) = default;
};

struct GridIssue {
    std::string check;             ///< square | shape | exactness | naturality | ...
    std::vector<std::size_t> at;   ///< 1-based indices naming the offending cell(s)
    std::string detail;
    std::optional<Matrix> residual;
};

struct GridReport {
    bool ok = true;
    std::vector<GridIssue> issues;
};

/// Checks every square, and with a witness every column's exactness and the
/// naturality of inj/surj. All violations are listed.
GridReport validate_grid(const BidirectedGrid& g, const SESWitness* w = nullptr);

/// basis[r][c] : V[r][c] -> V_c (+) W_r (V-block first).
struct GridChangeOfBasis {
    std::vector<std::vector<Matrix>> basis;
    std::vector<std::vector<Matrix>> inverse;
};

/// Block-diagonalizes the grid: after conjugation every right map is
/// diag(f, I) and every up map is diag(I, g). Sections of the surjections
/// are corrected first along row 1 and then row by row; the postcondition is
/// multiplied out for every map. Throws PreconditionError when validation
/// fails and CertificateError when an internal identity does not hold.
GridChangeOfBasis split_grid(const BidirectedGrid& g, const SESWitness& w);

/// Corner-level data in the normal form V_n (+) W_m of V[m][n].
struct RFHDecomposition {
    TateObj tate;               ///< c-lattice: W along up; d-lattice: V along right
    std::vector<Matrix> pi;     ///< pi[r] : V_n (+) W_m -> V_n (+) W_r
    std::vector<Matrix> opens;  ///< U_r = ker pi[r]
    std::vector<Matrix> iota;   ///< ker(W_m -> W_r) embedded in the W-block
};

RFHDecomposition rfh_decompose(const BidirectedGrid& g, const SESWitness& w, const GridChangeOfBasis& basis);

struct KappaCertificate {
    bool ok = false;
    std::size_t source_dim = 0;  ///< colim_c lim_r
    std::size_t target_dim = 0;  ///< lim_r colim_c
    Matrix kappa;                ///< canonical map, in the computed (co)limit bases
    Matrix normal_form;          ///< kappa in normal-form bases on both sides
};

/// Computes both iterated (co)limits of the grid from their definitions
/// (tuples of compatible elements, sums modulo relations), the canonical map
/// between them and its expression in normal-form bases, which must be the identity.
KappaCertificate kappa_check(const BidirectedGrid& g, const SESWitness& w, const GridChangeOfBasis& basis);

struct DualGrid {
    BidirectedGrid grid;
    SESWitness ses;
    bool certified = false;  ///< rfh of the dual equals the dual of rfh, levelwise
};

/// V'[r'][c'] = V[c'][r']^*: rows and columns trade places, every map is
/// transposed and the V and W witnesses swap.
DualGrid dual_grid(const BidirectedGrid& g, const SESWitness& w);
/// The transposed data without the certificate (an involution).
std::pair<BidirectedGrid, SESWitness> transpose_grid(const BidirectedGrid& g, const SESWitness& w);

enum class PairingKind { product, coproduct };

/// product: matrix is dim V[t] x (dim V[s])^2; coproduct: (dim V[t])^2 x dim V[s].
/// Cells are 0-based; the target is recorded rather than derived from
/// window arithmetic.
struct PairingEntry {
    std::size_t src_r = 0, src_c = 0;
    std::size_t tgt_r = 0, tgt_c = 0;
    Matrix matrix;
    friend bool operator==(const PairingEntry&, const PairingEntry&) = default;
};

struct PairingFamily {
    PairingKind kind = PairingKind::product;
    std::vector<PairingEntry> entries;
    friend bool operator==(const PairingFamily&, const PairingFamily&) = default;
};

struct InducedPiece {
    std::size_t src_r = 0, src_c = 0, tgt_r = 0, tgt_c = 0;
    Matrix normal_form;  ///< the entry conjugated into normal-form bases
    /// product: W_r (x) W_r -> W_r' on the quotients;
    /// coproduct: V_c -> V_c' (x) V_c' on the subspaces.
    Matrix induced;
};

struct PairingAssembly {
    GridReport report;
    std::vector<std::size_t> skipped;  ///< entries whose target lies outside the grid
    std::vector<InducedPiece> pieces;
};

/// Checks naturality of the family along every right and up map between
/// sources that carry entries, then reads off the induced maps on the
/// compact quotients.
PairingAssembly assemble_product(const BidirectedGrid& g, const SESWitness& w, const GridChangeOfBasis& basis,
                                 const PairingFamily& p);
/// Same checks; induced maps on the discrete subspaces.
PairingAssembly assemble_coproduct(const BidirectedGrid& g, const SESWitness& w, const GridChangeOfBasis& basis,
                                   const PairingFamily& p);

/// f : V[r][c] -> V'[r'][c'] with V' the dual grid, and its inverse g.
struct PDEntry {
    std::size_t r = 0, c = 0;
    std::size_t dual_r = 0, dual_c = 0;
    Matrix f;
    Matrix g;
    friend bool operator==(const PDEntry&, const PDEntry&) = default;
};

struct PDWitness {
    std::vector<PDEntry> entries;
    friend bool operator==(const PDWitness&, const PDWitness&) = default;
};

/// For every product entry s -> t: f_t mu = lambda^T (f_s (x) f_s), with
/// lambda the coproduct entry of the dual grid going from the reflection of
/// t to the reflection of s. Residuals are reported per source cell.
GridReport check_pd_intertwine(const BidirectedGrid& g, const SESWitness& w, const GridChangeOfBasis& basis,
                               const PairingFamily& mu, const PairingFamily& lambda, const PDWitness& pd);

}  // namespace tatespace

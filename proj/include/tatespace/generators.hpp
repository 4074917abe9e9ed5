#pragma once

#include "tatespace/bidirected.hpp"
#include "tatespace/filtered.hpp"
#include "tatespace/matrix.hpp"
#include "tatespace/spaces.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace tatespace {

/// Seeded source of random field elements and matrices. Only the raw 64-bit
/// engine output is used (never std distributions), so a seed produces the
/// same instances on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform-ish integer in [lo, hi].
    std::size_t range(std::size_t lo, std::size_t hi) { return lo + next() % (hi - lo + 1); }
    bool coin() { return next() & 1; }
    Residue residue(const FieldSpec& f) { return static_cast<Residue>(next() % f.p()); }
    Residue nonzero(const FieldSpec& f) { return static_cast<Residue>(1 + next() % (f.p() - 1)); }

    Matrix matrix(const FieldSpec& f, std::size_t rows, std::size_t cols);
    Matrix invertible(const FieldSpec& f, std::size_t n);
    /// rows x cols with independent columns (cols <= rows).
    Matrix injective(const FieldSpec& f, std::size_t rows, std::size_t cols);
    /// rows x cols of full row rank (rows <= cols).
    Matrix surjective(const FieldSpec& f, std::size_t rows, std::size_t cols);

private:
    std::mt19937_64 engine_;
};

/// Random prefix of length `depth` with dims in [0, max_dim]; the tail is
/// one the prefix satisfies (unspecified, bounded, or stabilizing after the
/// prefix when the last level is kept constant).
Tower random_tower(Rng& rng, const FieldSpec& f, std::size_t max_dim, std::size_t depth);
IndTower random_indtower(Rng& rng, const FieldSpec& f, std::size_t max_dim, std::size_t depth);
TateObj random_tate(Rng& rng, const FieldSpec& f, std::size_t max_dim, std::size_t depth);
/// Finite list of 1..max_pieces random towers, each available to `depth`.
IndLCObj random_indlc(Rng& rng, const FieldSpec& f, std::size_t max_pieces, std::size_t max_dim, std::size_t depth);

/// Random nested flags U_1 ⊇ ... ⊇ U_N = 0 in k^ambient (N <= max_flags).
FilteredSpace random_filtered(Rng& rng, const FieldSpec& f, std::size_t ambient, std::size_t max_flags);

/// Ground truth of a planted grid: the block sizes and the per-cell
/// scramble (cell coordinates = scramble * normal-form coordinates).
struct GridTruth {
    std::vector<std::size_t> v_dims;
    std::vector<std::size_t> w_dims;
    std::vector<std::vector<Matrix>> scramble;
};

struct PlantedGrid {
    BidirectedGrid grid;
    SESWitness ses;
    GridTruth truth;
};

/// Block model V_c (+) W_r with random structure maps, every cell scrambled by
/// a random invertible matrix. Cell dims stay <= max_cell.
PlantedGrid random_planted_grid(Rng& rng, const FieldSpec& f, std::size_t max_m, std::size_t max_n,
                                std::size_t max_cell);

/// Natural product and coproduct families planted in normal form and
/// transported through the scramble, each entry targeting its own cell,
/// together with the induced maps assembly must recover.
struct PlantedPairings {
    PairingFamily product;
    PairingFamily coproduct;
    /// [r][c]: W_r (x) W_r -> W_r
    std::vector<std::vector<Matrix>> product_induced;
    /// [r][c]: V_c -> V_c (x) V_c
    std::vector<std::vector<Matrix>> coproduct_induced;
};

PlantedPairings plant_pairings(Rng& rng, const PlantedGrid& pg);

/// Per-cell random duality isomorphisms V[r][c] -> V'[c][r] and the coproduct
/// family on the dual grid that makes `product` intertwine.
struct PlantedDuality {
    PDWitness pd;
    PairingFamily lambda;
};

PlantedDuality plant_duality(Rng& rng, const BidirectedGrid& g, const PairingFamily& product);

}  // namespace tatespace

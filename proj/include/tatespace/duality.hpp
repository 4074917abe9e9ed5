#pragma once

#include "tatespace/filtered.hpp"
#include "tatespace/spaces.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tatespace {

// Duals always use the coordinate dual basis, so dualizing a map is a
// transpose and dualizing twice gives back the same matrices.

inline FinVect dual_object(const FinVect& v) { return v; }
LinMap dual_object(const LinMap& f);
/// Dual of lim W_n is colim W_n^*: same dims, transposed transitions.
IndTower dual_object(const Tower& t);
Tower dual_object(const IndTower& t);
/// (L (+) D)^* = D^* (+) L^*: the lattices swap roles.
TateObj dual_object(const TateObj& v);
ProDiscObj dual_object(const IndLCObj& v);
IndLCObj dual_object(const ProDiscObj& v);

/// Levelwise pairing matrices between X and X^**.
struct DualityWitness {
    std::vector<Matrix> pairings;
    std::string description;
};

struct BidualReport {
    bool ok = false;
    std::optional<std::size_t> first_mismatch;  ///< 1-based level
    DualityWitness witness;
};

BidualReport bidual_check(const FinVect& v, std::size_t depth);
BidualReport bidual_check(const Tower& t, std::size_t depth);
BidualReport bidual_check(const IndTower& t, std::size_t depth);
BidualReport bidual_check(const TateObj& v, std::size_t depth);

struct SelfDualDecomposition {
    Matrix k;            ///< K = L ∩ phi^-1(L^perp), columns in V
    Matrix d;            ///< deterministic complement of K
    Matrix f;            ///< phi^-1(K^perp) = K (+) F
    Matrix iso;          ///< K (+) F -> D^*, v |-> phi(v) restricted to D
    Matrix iso_inverse;
    std::size_t lattice_witness = 0;
    bool k_zero = false;
    bool d_zero = false;
};

/// Self-duality splitting V = K (+) D for phi : V -> V^* invertible
/// (phi(v)(w) = w^T phi v) and L a c-lattice. Certificates are multiplied
/// out before returning; at finite truncation dim D = dim K + dim F and F is
/// reported rather than absorbed.
SelfDualDecomposition self_dual_decompose(const FilteredSpace& v, const Matrix& phi, const Matrix& l);

/// Extends the functional f on span(a) (1 x dim A row) to all of B so that
/// it vanishes on U_k. Throws PreconditionError when f does not kill A ∩ U_k.
Matrix extend_functional(const FilteredSpace& b, const Matrix& a, const Matrix& f, std::size_t k);

struct EvWitness {
    std::size_t level = 0;  ///< 1-based truncation level used
    Matrix open;            ///< U = K: the c-lattice block of c_N (+) d_N
    Matrix annihilator;     ///< basis of U^perp in the dual
    bool verified = false;
};

/// Continuity witness for evaluation V x V^* -> k: U = K = the c-lattice.
EvWitness ev_witness(const TateObj& v, std::size_t depth);

}  // namespace tatespace

#pragma once

#include "tatespace/filtered.hpp"
#include "tatespace/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tatespace {

/// Morphism of short exact sequences
///
///     0 -> A2 -i2-> B2 -p2-> C2 -> 0
///          |f       |g       |h
///     0 -> A1 -i1-> B1 -p1-> C1 -> 0
///
/// together with a retraction pi1 of i1.
struct SplitLadder {
    Matrix i1, p1, i2, p2;
    Matrix f, g, h;
    Matrix pi1;
};

struct LiftedSplitting {
    Matrix pi2;  ///< retraction of i2 with f pi2 = pi1 g
    Matrix s1;   ///< section of p1 with pi1 s1 = 0
    Matrix s2;   ///< section of p2 with pi2 s2 = 0 and g s2 = s1 h
};

/// Lifts the splitting of the top row to the bottom row, compatibly with the
/// vertical maps. Throws PreconditionError when a row is not exact, a square
/// does not commute, f is not surjective or pi1 is not a retraction.
LiftedSplitting lift_splitting(const SplitLadder& ladder);

/// The splitting at the truncation B / U_k.
struct LevelSplitting {
    std::size_t flag = 0;       ///< 1-based flag index k
    Matrix quotient;            ///< q_k : B -> B/U_k
    Matrix sub;                 ///< image of A in B/U_k (independent columns)
    Matrix pi;                  ///< B/U_k -> that image, in its coordinates
    bool compatible = false;    ///< pi_k q_k = (A -> A/(A ∩ U_k)) pi
};

struct SplitCertificate {
    Matrix pi;        ///< retraction B -> A in the coordinates of A's columns
    Matrix quotient;  ///< p : B -> C = B/A
    Matrix s;         ///< section C -> B with pi s = 0
    std::vector<LevelSplitting> levels;
    /// flag_compatible[k-1]: pi(U_k) ⊆ A ∩ U_k
    std::vector<bool> flag_compatible;
};

/// Builds compatible splittings of 0 -> A/(A ∩ U_k) -> B/U_k -> ... from the
/// coarsest flag down to U_N = 0, each lifted from the previous one, and
/// returns the resulting flag-compatible retraction. All identities are
/// multiplied out; a failure throws CertificateError. A must have
/// independent columns (PreconditionError otherwise).
SplitCertificate split_filtered_ses(const FilteredSpace& b, const Matrix& a);

struct ComplementCertificate {
    Matrix complement;       ///< S = ker pi
    Matrix projection_a;     ///< B -> B, projection onto A along S
    Matrix projection_s;     ///< B -> B, projection onto S along A
    bool direct_sum = false; ///< A ∩ S = 0 and dim A + dim S = dim B
    bool flags_compatible = false;
};

ComplementCertificate topological_complement(const FilteredSpace& b, const Matrix& a);

struct IsomorphismVerdict {
    bool certified = false;
    bool bijective = false;
    bool continuous = false;
    bool open = false;
    std::optional<Matrix> inverse;
    std::string reason;
};

/// A linear map between two truncated presentations is a topological
/// isomorphism only when it is bijective, continuous and open. Continuous
/// bijections that are not open (k[[t]] with the discrete topology onto
/// k[[t]] with the t-adic one) are refused.
IsomorphismVerdict certify_isomorphism(const FilteredSpace& src, const FilteredSpace& dst, const Matrix& map);

}  // namespace tatespace

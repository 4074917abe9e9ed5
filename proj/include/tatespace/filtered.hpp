#pragma once

#include "tatespace/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tatespace {

/// One truncation level of a complete space with a countable basis of open
/// subspaces: an ambient k^n with a nested flag U_1 ⊇ U_2 ⊇ ... ⊇ U_N = 0.
///
/// The terminal flag U_N = 0 marks the truncation boundary. Open-subspace
/// witnesses therefore range over U_1, ..., U_{N-1}; a single-flag space
/// (N = 1) is discrete and its only flag {0} is genuinely open.
class FilteredSpace {
public:
    /// Flags are column-span matrices; they are reduced to independent
    /// columns. Throws PreconditionError unless they are nested and the last is 0.
    FilteredSpace(FieldSpec field, std::size_t ambient, std::vector<Matrix> flags);

    /// Flags spanned by coordinate tails: U_k = span(e_{s_k}, ..., e_n)
    /// for the given codimensions (0-based start indices), followed by 0.
    static FilteredSpace coordinate_tails(FieldSpec field, std::size_t ambient, const std::vector<std::size_t>& starts);

    const FieldSpec& field() const { return field_; }
    std::size_t ambient() const { return ambient_; }
    const std::vector<Matrix>& flags() const { return flags_; }
    /// 1-based flag access.
    const Matrix& flag(std::size_t k) const { return flags_.at(k - 1); }
    std::size_t flag_count() const { return flags_.size(); }
    /// Number of flags usable as open-subspace witnesses (see class comment).
    std::size_t open_flag_count() const { return flags_.size() == 1 ? 1 : flags_.size() - 1; }

private:
    FieldSpec field_;
    std::size_t ambient_;
    std::vector<Matrix> flags_;
};

enum class LatticeMode { c, d };

struct LatticeVerdict {
    bool holds = false;
    std::optional<std::size_t> witness;  ///< 1-based flag index
    std::string note;
};

/// Mode c: S contains some open flag U_k (openness; linear boundedness is
/// automatic in finite dimension). Mode d: S ∩ U_k = 0 for some open flag
/// (discreteness; closedness is automatic). The smallest such k is returned.
/// Throws PreconditionError when S has dependent columns.
LatticeVerdict lattice_check(const FilteredSpace& space, const Matrix& s, LatticeMode mode);

}  // namespace tatespace

#include "tatespace/filtered.hpp"

#include "tatespace/errors.hpp"
#include "tatespace/linalg.hpp"

namespace tatespace {

FilteredSpace::FilteredSpace(FieldSpec field, std::size_t ambient, std::vector<Matrix> flags)
    : field_(field), ambient_(ambient)
{
    if (flags.empty())
        throw PreconditionError("filtered space needs at least the terminal zero flag");
    for (std::size_t k = 0; k < flags.size(); ++k) {
        if (!(flags[k].field() == field))
            throw FieldMismatch("flag " + std::to_string(k + 1) + " is over a different field");
        if (flags[k].rows() != ambient)
            throw ShapeError("flag " + std::to_string(k + 1) + " has " + std::to_string(flags[k].rows()) +
                             " rows, ambient dimension is " + std::to_string(ambient));
        Matrix basis = image_basis(flags[k]);
        if (k > 0 && !span_contains(flags_.back(), basis))
            throw PreconditionError("flag " + std::to_string(k + 1) + " is not contained in flag " +
                                    std::to_string(k));
        flags_.push_back(std::move(basis));
    }
    if (flags_.back().cols() != 0)
        throw PreconditionError("last flag must be the zero subspace");
}

FilteredSpace FilteredSpace::coordinate_tails(FieldSpec field, std::size_t ambient, const std::vector<std::size_t>& starts)
{
    std::vector<Matrix> flags;
    for (auto s : starts) {
        if (s > ambient)
            throw PreconditionError("coordinate flag start beyond ambient dimension");
        flags.push_back(Matrix::identity(field, ambient).block(0, s, ambient, ambient - s));
    }
    flags.emplace_back(field, ambient, 0);
    return FilteredSpace(field, ambient, std::move(flags));
}

LatticeVerdict lattice_check(const FilteredSpace& space, const Matrix& s, LatticeMode mode)
{
    require_same_field(space.flag(1), s, "lattice_check");
    if (s.rows() != space.ambient())
        throw ShapeError("lattice_check: subspace lives in the wrong ambient space");
    if (!has_independent_columns(s))
        throw PreconditionError("lattice_check: subspace columns are dependent");
    LatticeVerdict out;
    for (std::size_t k = 1; k <= space.open_flag_count(); ++k) {
        const Matrix& u = space.flag(k);
        const bool ok = mode == LatticeMode::c ? span_contains(s, u) : span_intersection(s, u).cols() == 0;
        if (ok) {
            out.holds = true;
            out.witness = k;
            out.note = mode == LatticeMode::c
                           ? "contains open flag U_" + std::to_string(k) + "; bounded since finite-dimensional"
                           : "meets open flag U_" + std::to_string(k) + " trivially; closed since finite-dimensional";
            return out;
        }
    }
    out.note = mode == LatticeMode::c ? "contains no open flag" : "meets every open flag nontrivially";
    return out;
}

}  // namespace tatespace

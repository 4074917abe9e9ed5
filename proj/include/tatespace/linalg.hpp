#pragma once

#include "tatespace/matrix.hpp"

#include <optional>
#include <vector>

namespace tatespace {

/// Reduced row echelon form. Pivots are chosen as the first nonzero entry
/// scanning columns left to right, rows top to bottom, so the result is a
/// deterministic function of the input.
struct Rref {
    Matrix reduced;
    std::vector<std::size_t> pivots;  ///< pivot column of each nonzero row
};

Rref rref(const Matrix& m);
std::size_t rank(const Matrix& m);

/// Canonical solution of m * x = b: free (non-pivot) variables are set to 0.
/// Returns nullopt when the system is inconsistent.
std::optional<Matrix> solve_linear(const Matrix& m, const Matrix& b);

enum class SubspaceMode { kernel, image, complement };

/// Kernel basis read off the RREF, one vector per free column in index order.
Matrix kernel_basis(const Matrix& m);
/// The pivot columns of m, in order.
Matrix image_basis(const Matrix& m);
/// Greedy completion of the independent columns of s to a basis of the
/// ambient space: e_1, e_2, ... are tested in order and kept when outside
/// the current span. Throws PreconditionError on dependent input columns.
Matrix complement_basis(const Matrix& s);

/// Dispatcher matching the three modes; `m` is the column-span matrix S for
/// the complement mode.
Matrix subspace_basis(const Matrix& m, SubspaceMode mode);

/// Given surjective f : X -> Y and alpha : S -> Y, returns theta : S -> X
/// with f * theta = alpha, columnwise canonical. Throws PreconditionError
/// when f does not have full row rank.
Matrix factor_through(const Matrix& f, const Matrix& alpha);

/// Kronecker product; basis e_i (x) e_j with the left index major.
Matrix kron(const Matrix& a, const Matrix& b);

std::optional<Matrix> inverse(const Matrix& m);
bool is_invertible(const Matrix& m);

bool has_independent_columns(const Matrix& m);
/// span(sub) is contained in span(super) (both column-span matrices).
bool span_contains(const Matrix& super, const Matrix& sub);
bool same_span(const Matrix& a, const Matrix& b);
/// Basis of span(a) ∩ span(b).
Matrix span_intersection(const Matrix& a, const Matrix& b);
/// Basis of span(a) + span(b).
Matrix span_sum(const Matrix& a, const Matrix& b);
/// Coordinates x of the columns of v in the independent basis: basis * x = v.
/// Throws PreconditionError when some column lies outside span(basis).
Matrix coordinates(const Matrix& basis, const Matrix& v);

/// Dimension of ker(m) and coker(m).
inline std::size_t kernel_dim(const Matrix& m) { return m.cols() - rank(m); }
inline std::size_t cokernel_dim(const Matrix& m) { return m.rows() - rank(m); }

}  // namespace tatespace

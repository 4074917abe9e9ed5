#include "tatespace/linalg.hpp"

#include "tatespace/errors.hpp"

#include <string>

namespace tatespace {

Rref rref(const Matrix& m)
{
    Rref out{m, {}};
    Matrix& a = out.reduced;
    const FieldSpec& f = a.field();
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t piv = row;
        while (piv < a.rows() && a(piv, col) == 0)
            ++piv;
        if (piv == a.rows())
            continue;
        if (piv != row)
            for (std::size_t c = 0; c < a.cols(); ++c) {
                Residue t = a(row, c);
                a.set(row, c, a(piv, c));
                a.set(piv, c, t);
            }
        const Residue s = f.inv(a(row, col));
        for (std::size_t c = col; c < a.cols(); ++c)
            a.set(row, c, f.mul(a(row, c), s));
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == row || a(r, col) == 0)
                continue;
            const Residue factor = a(r, col);
            for (std::size_t c = col; c < a.cols(); ++c)
                a.set(r, c, f.sub(a(r, c), f.mul(factor, a(row, c))));
        }
        out.pivots.push_back(col);
        ++row;
    }
    return out;
}

std::size_t rank(const Matrix& m)
{
    return rref(m).pivots.size();
}

std::optional<Matrix> solve_linear(const Matrix& m, const Matrix& b)
{
    require_same_field(m, b, "solve_linear");
    if (m.rows() != b.rows())
        throw ShapeError("solve_linear: " + std::to_string(m.rows()) + " equations vs right-hand side with " +
                         std::to_string(b.rows()) + " rows");
    const Rref r = rref(m.hstack(b));
    const std::size_t n = m.cols();
    Matrix x(m.field(), n, b.cols());
    for (std::size_t i = 0; i < r.pivots.size(); ++i) {
        if (r.pivots[i] >= n)
            return std::nullopt;  // pivot in the augmented block: inconsistent
        for (std::size_t c = 0; c < b.cols(); ++c)
            x.set(r.pivots[i], c, r.reduced(i, n + c));
    }
    return x;
}

Matrix kernel_basis(const Matrix& m)
{
    const Rref r = rref(m);
    const FieldSpec& f = m.field();
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : r.pivots)
        is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_pivot[c])
            free_cols.push_back(c);
    Matrix k(f, m.cols(), free_cols.size());
    for (std::size_t j = 0; j < free_cols.size(); ++j) {
        k.set(free_cols[j], j, 1);
        for (std::size_t i = 0; i < r.pivots.size(); ++i)
            k.set(r.pivots[i], j, f.neg(r.reduced(i, free_cols[j])));
    }
    return k;
}

Matrix image_basis(const Matrix& m)
{
    const Rref r = rref(m);
    return m.cols_subset(r.pivots);
}

Matrix complement_basis(const Matrix& s)
{
    if (!has_independent_columns(s))
        throw PreconditionError("complement_basis: input columns are dependent");
    const std::size_t n = s.rows();
    Matrix span = s;
    Matrix out(s.field(), n, 0);
    std::size_t r = s.cols();
    for (std::size_t i = 0; i < n && r < n; ++i) {
        Matrix e = Matrix::unit_vector(s.field(), n, i);
        Matrix trial = span.hstack(e);
        if (rank(trial) > r) {
            span = std::move(trial);
            out = out.hstack(e);
            ++r;
        }
    }
    return out;
}

Matrix subspace_basis(const Matrix& m, SubspaceMode mode)
{
    switch (mode) {
    case SubspaceMode::kernel:
        return kernel_basis(m);
    case SubspaceMode::image:
        return image_basis(m);
    case SubspaceMode::complement:
        return complement_basis(m);
    }
    throw PreconditionError("unknown subspace mode");
}

Matrix factor_through(const Matrix& f, const Matrix& alpha)
{
    require_same_field(f, alpha, "factor_through");
    if (rank(f) != f.rows())
        throw PreconditionError("factor_through: map is not surjective (rank " + std::to_string(rank(f)) +
                                " < " + std::to_string(f.rows()) + ")");
    auto theta = solve_linear(f, alpha);
    // surjectivity guarantees consistency
    return *theta;
}

Matrix kron(const Matrix& a, const Matrix& b)
{
    require_same_field(a, b, "kron");
    const FieldSpec& f = a.field();
    Matrix out(f, a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Residue x = a(i, j);
            if (!x)
                continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out.set(i * b.rows() + k, j * b.cols() + l, f.mul(x, b(k, l)));
        }
    return out;
}

std::optional<Matrix> inverse(const Matrix& m)
{
    if (!m.is_square())
        return std::nullopt;
    const std::size_t n = m.rows();
    const Rref r = rref(m.hstack(Matrix::identity(m.field(), n)));
    if (r.pivots.size() < n || (n > 0 && r.pivots[n - 1] != n - 1))
        return std::nullopt;
    return r.reduced.block(0, n, n, n);
}

bool is_invertible(const Matrix& m)
{
    return m.is_square() && rank(m) == m.rows();
}

bool has_independent_columns(const Matrix& m)
{
    return rank(m) == m.cols();
}

bool span_contains(const Matrix& super, const Matrix& sub)
{
    return rank(super.hstack(sub)) == rank(super);
}

bool same_span(const Matrix& a, const Matrix& b)
{
    const std::size_t ra = rank(a);
    return ra == rank(b) && rank(a.hstack(b)) == ra;
}

Matrix span_intersection(const Matrix& a, const Matrix& b)
{
    require_same_field(a, b, "span_intersection");
    if (a.rows() != b.rows())
        throw ShapeError("span_intersection: ambient dimensions differ");
    const Matrix k = kernel_basis(a.hstack(-b));
    const Matrix vectors = a * k.block(0, 0, a.cols(), k.cols());
    return image_basis(vectors);
}

Matrix span_sum(const Matrix& a, const Matrix& b)
{
    return image_basis(a.hstack(b));
}

Matrix coordinates(const Matrix& basis, const Matrix& v)
{
    auto x = solve_linear(basis, v);
    if (!x)
        throw PreconditionError("coordinates: vector outside the span of the basis");
    return *x;
}

}  // namespace tatespace

#include "tatespace/matrix.hpp"

#include "tatespace/errors.hpp"

#include <string>

namespace tatespace {

namespace {

std::string shape(const Matrix& m)
{
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

void require_same_field(const Matrix& a, const Matrix& b, const char* op)
{
    if (!(a.field() == b.field()))
        throw FieldMismatch(std::string(op) + ": GF(" + std::to_string(a.field().p()) + ") vs GF(" +
                            std::to_string(b.field().p()) + ")");
}

Matrix::Matrix(FieldSpec field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, 0)
{
}

Matrix::Matrix(FieldSpec field, std::size_t rows, std::size_t cols, std::span<const std::int64_t> entries)
    : Matrix(field, rows, cols)
{
    if (entries.size() != rows * cols)
        throw ShapeError("matrix " + std::to_string(rows) + "x" + std::to_string(cols) + " needs " +
                         std::to_string(rows * cols) + " entries, got " + std::to_string(entries.size()));
    for (std::size_t i = 0; i < entries.size(); ++i)
        entries_[i] = field_.reduce(entries[i]);
}

Matrix::Matrix(FieldSpec field, std::initializer_list<std::initializer_list<std::int64_t>> rows)
    : field_(field), rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0)
{
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_)
            throw ShapeError("ragged matrix literal");
        for (auto v : row)
            entries_.push_back(field_.reduce(v));
    }
}

Matrix Matrix::identity(FieldSpec field, std::size_t n)
{
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.set(i, i, 1);
    return m;
}

Matrix Matrix::unit_vector(FieldSpec field, std::size_t n, std::size_t i)
{
    Matrix m(field, n, 1);
    m.set(i, 0, 1);
    return m;
}

bool Matrix::is_zero() const
{
    for (auto v : entries_)
        if (v)
            return false;
    return true;
}

Matrix Matrix::transpose() const
{
    Matrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t.set(c, r, (*this)(r, c));
    return t;
}

Matrix Matrix::col(std::size_t c) const
{
    return block(0, c, rows_, 1);
}

Matrix Matrix::cols_subset(std::span<const std::size_t> which) const
{
    Matrix out(field_, rows_, which.size());
    for (std::size_t k = 0; k < which.size(); ++k) {
        if (which[k] >= cols_)
            throw ShapeError("column index out of range");
        for (std::size_t r = 0; r < rows_; ++r)
            out.set(r, k, (*this)(r, which[k]));
    }
    return out;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
{
    if (r0 + nr > rows_ || c0 + nc > cols_)
        throw ShapeError("block out of range of " + shape(*this));
    Matrix out(field_, nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
        for (std::size_t c = 0; c < nc; ++c)
            out.set(r, c, (*this)(r0 + r, c0 + c));
    return out;
}

Matrix Matrix::scaled(Residue s) const
{
    Matrix out(*this);
    for (auto& v : out.entries_)
        v = field_.mul(v, s);
    return out;
}

Matrix Matrix::hstack(const Matrix& other) const
{
    require_same_field(*this, other, "hstack");
    if (rows_ != other.rows_)
        throw ShapeError("hstack " + shape(*this) + " | " + shape(other));
    Matrix out(field_, rows_, cols_ + other.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c)
            out.set(r, c, (*this)(r, c));
        for (std::size_t c = 0; c < other.cols_; ++c)
            out.set(r, cols_ + c, other(r, c));
    }
    return out;
}

Matrix Matrix::vstack(const Matrix& other) const
{
    require_same_field(*this, other, "vstack");
    if (cols_ != other.cols_)
        throw ShapeError("vstack " + shape(*this) + " ; " + shape(other));
    Matrix out(field_, rows_ + other.rows_, cols_);
    std::copy(entries_.begin(), entries_.end(), out.entries_.begin());
    std::copy(other.entries_.begin(), other.entries_.end(), out.entries_.begin() + entries_.size());
    return out;
}

Matrix operator*(const Matrix& a, const Matrix& b)
{
    require_same_field(a, b, "multiply");
    if (a.cols_ != b.rows_)
        throw ShapeError("multiply " + shape(a) + " * " + shape(b));
    const std::uint64_t p = a.field_.p();
    Matrix out(a.field_, a.rows_, b.cols_);
    std::vector<std::uint64_t> acc(b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const std::uint64_t x = a(r, k);
            if (!x)
                continue;
            const Residue* brow = &b.entries_[k * b.cols_];
            for (std::size_t c = 0; c < b.cols_; ++c)
                acc[c] = (acc[c] + x * brow[c]) % p;
        }
        for (std::size_t c = 0; c < b.cols_; ++c)
            out.set(r, c, static_cast<Residue>(acc[c]));
    }
    return out;
}

Matrix operator+(const Matrix& a, const Matrix& b)
{
    require_same_field(a, b, "add");
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw ShapeError("add " + shape(a) + " + " + shape(b));
    Matrix out(a);
    for (std::size_t i = 0; i < out.entries_.size(); ++i)
        out.entries_[i] = a.field_.add(a.entries_[i], b.entries_[i]);
    return out;
}

Matrix operator-(const Matrix& a, const Matrix& b)
{
    require_same_field(a, b, "subtract");
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw ShapeError("subtract " + shape(a) + " - " + shape(b));
    Matrix out(a);
    for (std::size_t i = 0; i < out.entries_.size(); ++i)
        out.entries_[i] = a.field_.sub(a.entries_[i], b.entries_[i]);
    return out;
}

Matrix Matrix::operator-() const
{
    Matrix out(*this);
    for (auto& v : out.entries_)
        v = field_.neg(v);
    return out;
}

bool operator==(const Matrix& a, const Matrix& b)
{
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

Matrix block_diag(const Matrix& a, const Matrix& b)
{
    require_same_field(a, b, "block_diag");
    Matrix out(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            out.set(r, c, a(r, c));
    for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c)
            out.set(a.rows() + r, a.cols() + c, b(r, c));
    return out;
}

}  // namespace tatespace

#pragma once

#include "tatespace/field.hpp"

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace tatespace {

/// Dense row-major matrix over GF(p). Every entry lies in [0, p).
///
/// Matrices carry their field; mixing fields in one operation throws
/// FieldMismatch, incompatible shapes throw ShapeError. Zero-row and
/// zero-column matrices are valid and behave as maps to/from the zero space.
class Matrix {
public:
    /// Empty 0 x 0 matrix over GF(2); a placeholder until assigned.
    Matrix() : Matrix(FieldSpec(2), 0, 0) {}
    Matrix(FieldSpec field, std::size_t rows, std::size_t cols);
    /// Entries are row-major integers reduced mod p.
    Matrix(FieldSpec field, std::size_t rows, std::size_t cols, std::span<const std::int64_t> entries);
    Matrix(FieldSpec field, std::initializer_list<std::initializer_list<std::int64_t>> rows);

    static Matrix identity(FieldSpec field, std::size_t n);
    static Matrix zero(FieldSpec field, std::size_t rows, std::size_t cols) { return {field, rows, cols}; }
    /// n x 1 standard basis vector e_i (0-based i).
    static Matrix unit_vector(FieldSpec field, std::size_t n, std::size_t i);

    const FieldSpec& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::vector<Residue>& entries() const { return entries_; }

    Residue operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, Residue v) { entries_[r * cols_ + c] = v; }

    bool is_zero() const;
    bool is_square() const { return rows_ == cols_; }

    Matrix transpose() const;
    Matrix col(std::size_t c) const;
    Matrix cols_subset(std::span<const std::size_t> which) const;
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    Matrix scaled(Residue s) const;

    /// [this | other]
    Matrix hstack(const Matrix& other) const;
    /// [this ; other]
    Matrix vstack(const Matrix& other) const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    Matrix operator-() const;

    friend bool operator==(const Matrix& a, const Matrix& b);

private:
    FieldSpec field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Residue> entries_;
};

/// [[a, 0], [0, b]]
Matrix block_diag(const Matrix& a, const Matrix& b);

void require_same_field(const Matrix& a, const Matrix& b, const char* op);

}  // namespace tatespace

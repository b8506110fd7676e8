#pragma once

// Dense exact linear algebra over Q and F_p.

#include <vector>

#include "moore/rings.hpp"

namespace moore {

class Matrix {
public:
    Matrix() = default;
    /// Throws NonFieldRing unless the ring is Q or F_p without v or symbols.
    Matrix(Ring ring, int rows, int cols);

    const Ring& ring() const { return ring_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    RingElem& at(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    const RingElem& at(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    Matrix transpose() const;
    /// Columns in [first, first + count).
    Matrix columns(int first, int count) const;
    bool is_zero() const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b);

private:
    Ring ring_;
    int rows_ = 0;
    int cols_ = 0;
    std::vector<RingElem> data_;
};

struct Echelon {
    Matrix reduced;           // reduced row echelon form
    std::vector<int> pivots;  // pivot column of each nonzero row, increasing
};

Echelon row_echelon(Matrix m);
int rank(const Matrix& m);
/// Columns form a basis of {x : m x = 0}.
Matrix kernel(const Matrix& m);
/// Lowest coordinates attained by the column span: pivots of the transpose.
std::vector<int> leading_coordinates(const Matrix& span);

}  // namespace moore

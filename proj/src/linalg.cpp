#include "moore/linalg.hpp"

#include "moore/error.hpp"

namespace moore {

Matrix::Matrix(Ring ring, int rows, int cols) : ring_(ring), rows_(rows), cols_(cols) {
    if (!ring.is_field())
        throw Error(ErrorCode::NonFieldRing, "linear algebra needs Q or F_p, got " + ring.spec());
    data_.assign(static_cast<std::size_t>(rows) * cols, ring.zero());
}

Matrix Matrix::transpose() const {
    Matrix t(ring_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

Matrix Matrix::columns(int first, int count) const {
    Matrix c(ring_, rows_, count);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < count; ++j) c.at(i, j) = at(i, first + j);
    return c;
}

bool Matrix::is_zero() const {
    for (const auto& x : data_)
        if (!x.is_zero()) return false;
    return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::InvalidArgument, "matrix shapes do not match");
    Matrix c(a.ring_, a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int k = 0; k < a.cols_; ++k) {
            const RingElem& x = a.at(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < b.cols_; ++j)
                if (!b.at(k, j).is_zero()) c.at(i, j) += x * b.at(k, j);
        }
    return c;
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.ring_ == b.ring_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Echelon row_echelon(Matrix m) {
    Echelon e;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int pivot = -1;
        for (int i = row; i < m.rows(); ++i)
            if (!m.at(i, col).is_zero()) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(pivot, j), m.at(row, j));
        const RingElem inv = inverse(m.at(row, col));
        for (int j = col; j < m.cols(); ++j) m.at(row, j) = m.at(row, j) * inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || m.at(i, col).is_zero()) continue;
            const RingElem f = m.at(i, col);
            for (int j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(row, j);
        }
        e.pivots.push_back(col);
        ++row;
    }
    e.reduced = std::move(m);
    return e;
}

int rank(const Matrix& m) { return static_cast<int>(row_echelon(m).pivots.size()); }

Matrix kernel(const Matrix& m) {
    Echelon e = row_echelon(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int p : e.pivots) is_pivot[p] = true;
    const int dim = m.cols() - static_cast<int>(e.pivots.size());
    Matrix k(m.ring(), m.cols(), dim);
    int out = 0;
    for (int free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        k.at(free, out) = m.ring().one();
        for (std::size_t r = 0; r < e.pivots.size(); ++r) k.at(e.pivots[r], out) = -e.reduced.at(static_cast<int>(r), free);
        ++out;
    }
    return k;
}

std::vector<int> leading_coordinates(const Matrix& span) { return row_echelon(span.transpose()).pivots; }

}  // namespace moore

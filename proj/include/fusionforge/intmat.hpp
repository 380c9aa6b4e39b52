#pragma once

#include <cstdint>
#include <vector>

namespace fusionforge {

/// Dense integer matrix, row-major. Sizes here are tiny (rank <= 8), so
/// everything is exact int64 with overflow-checked products.
class IntMat {
public:
    IntMat() : rows_(0), cols_(0) {}
    IntMat(int rows, int cols, std::int64_t fill = 0)
        : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols, fill) {}

    static IntMat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    std::int64_t& operator()(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
    std::int64_t operator()(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }

    bool operator==(const IntMat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    IntMat transposed() const;
    friend IntMat operator*(const IntMat& a, const IntMat& b);

    std::int64_t det() const;  // Bareiss, exact

private:
    int rows_, cols_;
    std::vector<std::int64_t> a_;
};

struct SmithResult {
    IntMat u;     // unimodular row ops
    IntMat v;     // unimodular column ops
    IntMat d;     // u * a * v, diagonal with d1 | d2 | ...
    std::vector<std::int64_t> divisors;  // nonnegative diagonal of d
};

/// Smith normal form over the integers: U A V = D with U, V unimodular
/// and the diagonal entries dividing each other in order.
SmithResult smith_normal_form(const IntMat& a);

/// Inverse of a matrix with det = +-1 (exact, via adjugate).
IntMat unimodular_inverse(const IntMat& a);

}  // namespace fusionforge

#include "fusionforge/intmat.hpp"

#include <cstdlib>
#include <stdexcept>

namespace fusionforge {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    __int128 p = __int128(a) * b;
    if (p > INT64_MAX || p < INT64_MIN) throw std::overflow_error("IntMat: overflow");
    return std::int64_t(p);
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    __int128 s = __int128(a) + b;
    if (s > INT64_MAX || s < INT64_MIN) throw std::overflow_error("IntMat: overflow");
    return std::int64_t(s);
}

}  // namespace

IntMat IntMat::identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMat IntMat::transposed() const {
    IntMat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMat operator*(const IntMat& a, const IntMat& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("IntMat: shape mismatch");
    IntMat c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            std::int64_t aik = a(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols(); ++j)
                c(i, j) = checked_add(c(i, j), checked_mul(aik, b(k, j)));
        }
    return c;
}

std::int64_t IntMat::det() const {
    if (rows_ != cols_) throw std::invalid_argument("IntMat: det of non-square");
    int n = rows_;
    if (n == 0) return 1;
    // Bareiss fraction-free elimination on an __int128 working copy.
    std::vector<__int128> m(std::size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[std::size_t(i) * n + j] = (*this)(i, j);
    __int128 prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[std::size_t(k) * n + k] == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (m[std::size_t(i) * n + k] != 0) { p = i; break; }
            if (p < 0) return 0;
            for (int j = 0; j < n; ++j)
                std::swap(m[std::size_t(k) * n + j], m[std::size_t(p) * n + j]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                __int128 v = m[std::size_t(i) * n + j] * m[std::size_t(k) * n + k] -
                             m[std::size_t(i) * n + k] * m[std::size_t(k) * n + j];
                m[std::size_t(i) * n + j] = v / prev;
            }
        prev = m[std::size_t(k) * n + k];
    }
    __int128 d = sign * m[std::size_t(n - 1) * n + (n - 1)];
    if (d > INT64_MAX || d < INT64_MIN) throw std::overflow_error("IntMat: det overflow");
    return std::int64_t(d);
}

namespace {

bool find_pivot(const IntMat& d, int s, int& pi, int& pj) {
    std::int64_t best = 0;
    bool found = false;
    for (int i = s; i < d.rows(); ++i)
        for (int j = s; j < d.cols(); ++j) {
            std::int64_t v = std::llabs(d(i, j));
            if (v != 0 && (!found || v < best)) {
                best = v;
                pi = i;
                pj = j;
                found = true;
            }
        }
    return found;
}

void swap_rows(IntMat& m, int a, int b) {
    for (int j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMat& m, int a, int b) {
    for (int i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row a -= q * row b, applied to d and the row-op accumulator u
void row_combine(IntMat& d, IntMat& u, int a, int b, std::int64_t q) {
    for (int j = 0; j < d.cols(); ++j) d(a, j) = checked_add(d(a, j), checked_mul(-q, d(b, j)));
    for (int j = 0; j < u.cols(); ++j) u(a, j) = checked_add(u(a, j), checked_mul(-q, u(b, j)));
}

void col_combine(IntMat& d, IntMat& v, int a, int b, std::int64_t q) {
    for (int i = 0; i < d.rows(); ++i) d(i, a) = checked_add(d(i, a), checked_mul(-q, d(i, b)));
    for (int i = 0; i < v.rows(); ++i) v(i, a) = checked_add(v(i, a), checked_mul(-q, v(i, b)));
}

}  // namespace

SmithResult smith_normal_form(const IntMat& a) {
    SmithResult r;
    r.d = a;
    r.u = IntMat::identity(a.rows());
    r.v = IntMat::identity(a.cols());
    IntMat& d = r.d;
    int n = std::min(a.rows(), a.cols());

    for (int s = 0; s < n; ++s) {
        int pi = s, pj = s;
        if (!find_pivot(d, s, pi, pj)) break;
        if (pi != s) { swap_rows(d, s, pi); swap_rows(r.u, s, pi); }
        if (pj != s) { swap_cols(d, s, pj); swap_cols(r.v, s, pj); }

        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = s + 1; i < d.rows(); ++i) {
                if (d(i, s) == 0) continue;
                std::int64_t q = d(i, s) / d(s, s);
                row_combine(d, r.u, i, s, q);
                if (d(i, s) != 0) {  // remainder smaller than pivot: swap up
                    swap_rows(d, s, i);
                    swap_rows(r.u, s, i);
                    clean = false;
                }
            }
            for (int j = s + 1; j < d.cols(); ++j) {
                if (d(s, j) == 0) continue;
                std::int64_t q = d(s, j) / d(s, s);
                col_combine(d, r.v, j, s, q);
                if (d(s, j) != 0) {
                    swap_cols(d, s, j);
                    swap_cols(r.v, s, j);
                    clean = false;
                }
            }
            if (clean) {
                // pivot must divide the rest of the block
                for (int i = s + 1; i < d.rows() && clean; ++i)
                    for (int j = s + 1; j < d.cols() && clean; ++j)
                        if (d(i, j) % d(s, s) != 0) {
                            // fold row i into row s to pull the bad entry in
                            for (int jj = 0; jj < d.cols(); ++jj)
                                d(s, jj) = checked_add(d(s, jj), d(i, jj));
                            for (int jj = 0; jj < r.u.cols(); ++jj)
                                r.u(s, jj) = checked_add(r.u(s, jj), r.u(i, jj));
                            clean = false;
                        }
            }
        }
        if (d(s, s) < 0) {
            for (int j = 0; j < d.cols(); ++j) d(s, j) = -d(s, j);
            for (int j = 0; j < r.u.cols(); ++j) r.u(s, j) = -r.u(s, j);
        }
    }

    for (int s = 0; s < n; ++s) r.divisors.push_back(d(s, s));
    return r;
}

IntMat unimodular_inverse(const IntMat& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("IntMat: inverse of non-square");
    int n = a.rows();
    std::int64_t det = a.det();
    if (det != 1 && det != -1) throw std::invalid_argument("IntMat: not unimodular");
    IntMat inv(n, n);
    // adjugate via minors; n <= 8 so the n!-ish cost is irrelevant
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            IntMat minor(n - 1, n - 1);
            for (int r = 0, rr = 0; r < n; ++r) {
                if (r == i) continue;
                for (int c = 0, cc = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor(rr, cc++) = a(r, c);
                }
                ++rr;
            }
            std::int64_t cof = (n == 1) ? 1 : minor.det();
            if ((i + j) % 2 != 0) cof = -cof;
            inv(j, i) = det * cof;
        }
    return inv;
}

}  // namespace fusionforge

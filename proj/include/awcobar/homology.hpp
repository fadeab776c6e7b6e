#pragma once

#include "awcobar/linear.hpp"

#include <map>
#include <string>
#include <vector>

namespace awcobar {

struct IntMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Int> a;

    IntMatrix() = default;
    IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
    static IntMatrix identity(std::size_t n)
    {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static IntMatrix from(const std::vector<std::vector<long long>>& v)
    {
        IntMatrix m(v.size(), v.empty() ? 0 : v[0].size());
        for (std::size_t i = 0; i < m.rows; ++i)
            for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = v[i][j];
        return m;
    }

    Int& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
    bool is_zero() const
    {
        for (const auto& x : a)
            if (x != 0) return false;
        return true;
    }
    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

    friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y)
    {
        if (x.cols != y.rows) throw PreconditionError("matrix product: inner dimensions differ");
        IntMatrix out(x.rows, y.cols);
        for (std::size_t i = 0; i < x.rows; ++i)
            for (std::size_t k = 0; k < x.cols; ++k) {
                if (x(i, k) == 0) continue;
                for (std::size_t j = 0; j < y.cols; ++j) out(i, j) += x(i, k) * y(k, j);
            }
        return out;
    }
};

/// Determinant by fraction-free (Bareiss) elimination.
inline Int determinant(IntMatrix m)
{
    if (m.rows != m.cols) throw PreconditionError("determinant of a non-square matrix");
    const std::size_t n = m.rows;
    if (n == 0) return 1;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

struct SmithForm {
    IntMatrix D, U, V;
    /// Nonzero diagonal entries d_1 | d_2 | ..., all positive.
    std::vector<Int> invariant_factors;
    std::size_t rank() const { return invariant_factors.size(); }
};

/// U * M * V = D with U, V unimodular and D diagonal with d_1 | d_2 | ...
inline SmithForm smith_normal_form(const IntMatrix& M)
{
    IntMatrix D = M;
    IntMatrix U = IntMatrix::identity(M.rows), V = IntMatrix::identity(M.cols);
    const std::size_t m = M.rows, n = M.cols;

    auto swap_rows = [&](std::size_t i, std::size_t j) {
        for (std::size_t c = 0; c < n; ++c) std::swap(D(i, c), D(j, c));
        for (std::size_t c = 0; c < m; ++c) std::swap(U(i, c), U(j, c));
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        for (std::size_t r = 0; r < m; ++r) std::swap(D(r, i), D(r, j));
        for (std::size_t r = 0; r < n; ++r) std::swap(V(r, i), V(r, j));
    };
    // row_i -= q * row_j
    auto row_op = [&](std::size_t i, std::size_t j, const Int& q) {
        for (std::size_t c = 0; c < n; ++c) D(i, c) -= q * D(j, c);
        for (std::size_t c = 0; c < m; ++c) U(i, c) -= q * U(j, c);
    };
    auto col_op = [&](std::size_t i, std::size_t j, const Int& q) {
        for (std::size_t r = 0; r < m; ++r) D(r, i) -= q * D(r, j);
        for (std::size_t r = 0; r < n; ++r) V(r, i) -= q * V(r, j);
    };

    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
        // smallest nonzero entry of the remaining block
        bool found = false;
        std::size_t pi = 0, pj = 0;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (D(i, j) != 0 && (!found || abs(D(i, j)) < abs(D(pi, pj)))) {
                    found = true;
                    pi = i;
                    pj = j;
                }
        if (!found) break;
        swap_rows(t, pi);
        swap_cols(t, pj);
        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (D(i, t) == 0) continue;
                row_op(i, t, D(i, t) / D(t, t));
                if (D(i, t) != 0) {
                    clean = false;
                    swap_rows(t, i);
                }
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (D(t, j) == 0) continue;
                col_op(j, t, D(t, j) / D(t, t));
                if (D(t, j) != 0) {
                    clean = false;
                    swap_cols(t, j);
                }
            }
            if (!clean) continue;
            // divisibility: fold an offending row into row t
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (D(i, j) % D(t, t) != 0) {
                        row_op(t, i, Int(-1));
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (D(t, t) < 0) {
            for (std::size_t c = 0; c < n; ++c) D(t, c) = -D(t, c);
            for (std::size_t c = 0; c < m; ++c) U(t, c) = -U(t, c);
        }
    }
    SmithForm out{D, U, V, {}};
    for (std::size_t i = 0; i < t; ++i) out.invariant_factors.push_back(D(i, i));
    return out;
}

struct HomologyGroup {
    long long betti = 0;
    std::vector<Int> torsion;
    friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;

    std::string to_string() const
    {
        std::string s = betti == 0 ? std::string{} : (betti == 1 ? "Z" : "Z^" + std::to_string(betti));
        for (const auto& t : torsion) s += (s.empty() ? "" : " + ") + ("Z/" + t.str());
        return s.empty() ? "0" : s;
    }
};

/// Matrix of d : C_n -> C_{n-1}, rows indexed by basis(n-1), columns by basis(n).
template <class Complex>
IntMatrix boundary_matrix(const Complex& c, int n)
{
    using B = typename Complex::Basis;
    const auto src = c.basis(n);
    const auto tgt = n > 0 ? c.basis(n - 1) : std::vector<B>{};
    std::map<B, std::size_t> row;
    for (std::size_t i = 0; i < tgt.size(); ++i) row[tgt[i]] = i;
    IntMatrix M(tgt.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j)
        for (const auto& [b, k] : c.d(src[j])) {
            auto it = row.find(b);
            if (it == row.end()) throw PreconditionError("boundary leaves the enumerated basis");
            M(it->second, j) = k;
        }
    return M;
}

/// H_n from the boundary matrices into and out of degree n.
inline HomologyGroup homology_from(const IntMatrix& d_n, const IntMatrix& d_n1, std::size_t dim_n)
{
    if (d_n.cols != dim_n || d_n1.rows != dim_n) throw PreconditionError("inconsistent boundary matrices");
    if (d_n.rows > 0 && d_n1.cols > 0 && !(d_n * d_n1).is_zero())
        throw PreconditionError("boundary matrices do not compose to zero");
    const auto in = smith_normal_form(d_n1);
    const auto out = smith_normal_form(d_n);
    HomologyGroup h;
    h.betti = static_cast<long long>(dim_n) - static_cast<long long>(out.rank()) - static_cast<long long>(in.rank());
    for (const auto& f : in.invariant_factors)
        if (f != 1) h.torsion.push_back(f);
    return h;
}

template <class Complex>
HomologyGroup homology(const Complex& c, int n)
{
    return homology_from(boundary_matrix(c, n), boundary_matrix(c, n + 1), c.basis(n).size());
}

} // namespace awcobar

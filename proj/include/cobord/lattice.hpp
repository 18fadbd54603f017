#pragma once

// Per-graded-piece linear algebra: Hermite-style column reduction over Z
// (canonical coset representatives and Smith invariant factors for torsion
// reporting) and reduced row echelon reduction over Q.

#include <algorithm>
#include <vector>

#include "arith.hpp"

namespace cobord {

// Lattice spanned by integer columns inside Z^n.  Columns are kept in
// echelon form: each basis column has a pivot row not shared with any other,
// pivot entries positive, rows below the pivot arbitrary.
class ZLattice {
public:
    explicit ZLattice(int dim) : dim_(dim) {}

    void add_column(std::vector<Int> v) {
        reduce_in_place(v);
        int p = first_nonzero(v);
        if (p < 0) return;
        if (v[p] < 0)
            for (auto& x : v) x = -x;
        basis_.push_back(std::move(v));
        pivots_.push_back(p);
        // keep basis sorted by pivot row; earlier pivots reduce later columns
        for (std::size_t i = basis_.size(); i-- > 1;) {
            if (pivots_[i] < pivots_[i - 1]) {
                std::swap(pivots_[i], pivots_[i - 1]);
                std::swap(basis_[i], basis_[i - 1]);
            }
        }
    }

    // Canonical representative of v modulo the column span: for each pivot
    // row p with pivot d, the result has entry in [0, d).
    void reduce_in_place(std::vector<Int>& v) const {
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            int p = pivots_[i];
            if (v[p] == 0) continue;
            const Int& d = basis_[i][p];
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), v[p].get_mpz_t(), d.get_mpz_t());
            if (q == 0) continue;
            for (int r = 0; r < dim_; ++r)
                if (basis_[i][r] != 0) v[r] -= q * basis_[i][r];
        }
    }

    int rank() const { return (int)basis_.size(); }
    int dim() const { return dim_; }

    // Invariant factors > 1 of Z^n / L (the torsion of the quotient).
    std::vector<Int> torsion() const {
        if (basis_.empty()) return {};
        std::vector<std::vector<Int>> m(dim_, std::vector<Int>(basis_.size()));
        for (std::size_t j = 0; j < basis_.size(); ++j)
            for (int i = 0; i < dim_; ++i) m[i][j] = basis_[j][i];
        std::vector<Int> inv = smith_invariants(std::move(m));
        std::vector<Int> t;
        for (auto& d : inv)
            if (d > 1) t.push_back(d);
        return t;
    }

    // Smith normal form diagonal (nonzero invariant factors) of a matrix.
    static std::vector<Int> smith_invariants(std::vector<std::vector<Int>> m) {
        std::vector<Int> inv;
        std::size_t rows = m.size();
        if (rows == 0) return inv;
        std::size_t cols = m[0].size();
        std::size_t r0 = 0, c0 = 0;
        while (r0 < rows && c0 < cols) {
            // find a nonzero pivot with minimal absolute value
            std::size_t pi = r0, pj = c0;
            bool found = false;
            Int best = 0;
            for (std::size_t i = r0; i < rows; ++i)
                for (std::size_t j = c0; j < cols; ++j) {
                    if (m[i][j] == 0) continue;
                    Int a = abs(m[i][j]);
                    if (!found || a < best) {
                        best = a;
                        pi = i;
                        pj = j;
                        found = true;
                    }
                }
            if (!found) break;
            std::swap(m[r0], m[pi]);
            for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][c0], m[i][pj]);
            bool clean = true;
            for (std::size_t i = r0 + 1; i < rows; ++i)
                if (m[i][c0] != 0) {
                    Int q;
                    mpz_fdiv_q(q.get_mpz_t(), m[i][c0].get_mpz_t(), m[r0][c0].get_mpz_t());
                    for (std::size_t j = c0; j < cols; ++j) m[i][j] -= q * m[r0][j];
                    if (m[i][c0] != 0) clean = false;
                }
            for (std::size_t j = c0 + 1; j < cols; ++j)
                if (m[r0][j] != 0) {
                    Int q;
                    mpz_fdiv_q(q.get_mpz_t(), m[r0][j].get_mpz_t(), m[r0][c0].get_mpz_t());
                    for (std::size_t i = r0; i < rows; ++i) m[i][j] -= q * m[i][c0];
                    if (m[r0][j] != 0) clean = false;
                }
            if (!clean) continue;  // pivot shrank, repeat at same position
            Int d = abs(m[r0][c0]);
            inv.push_back(d);
            ++r0;
            ++c0;
        }
        // enforce divisibility d1 | d2 | ...
        for (std::size_t i = 0; i + 1 < inv.size(); ++i)
            for (std::size_t j = i + 1; j < inv.size(); ++j) {
                Int g = gcd(inv[i], inv[j]);
                Int l = inv[i] / g * inv[j];
                inv[i] = g;
                inv[j] = l;
            }
        std::sort(inv.begin(), inv.end());
        return inv;
    }

private:
    static int first_nonzero(const std::vector<Int>& v) {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) return (int)i;
        return -1;
    }

    int dim_;
    std::vector<std::vector<Int>> basis_;
    std::vector<int> pivots_;
};

// Column span over Q, kept as a reduced echelon basis.  reduce() is the
// linear projection killing pivot coordinates.
class QLattice {
public:
    explicit QLattice(int dim) : dim_(dim) {}

    void add_column(std::vector<Rat> v) {
        reduce_in_place(v);
        int p = first_nonzero(v);
        if (p < 0) return;
        Rat inv = Rat(1) / v[p];
        for (auto& x : v) {
            x *= inv;
            x.canonicalize();
        }
        // back-substitute into existing columns
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            Rat c = basis_[i][p];
            if (c == 0) continue;
            for (int r = 0; r < dim_; ++r) {
                basis_[i][r] -= c * v[r];
                basis_[i][r].canonicalize();
            }
        }
        basis_.push_back(std::move(v));
        pivots_.push_back(p);
        for (std::size_t i = basis_.size(); i-- > 1;) {
            if (pivots_[i] < pivots_[i - 1]) {
                std::swap(pivots_[i], pivots_[i - 1]);
                std::swap(basis_[i], basis_[i - 1]);
            }
        }
    }

    void reduce_in_place(std::vector<Rat>& v) const {
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            int p = pivots_[i];
            if (v[p] == 0) continue;
            Rat c = v[p];
            for (int r = 0; r < dim_; ++r) {
                v[r] -= c * basis_[i][r];
                v[r].canonicalize();
            }
        }
    }

    int rank() const { return (int)basis_.size(); }
    int dim() const { return dim_; }

private:
    static int first_nonzero(const std::vector<Rat>& v) {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) return (int)i;
        return -1;
    }

    int dim_;
    std::vector<std::vector<Rat>> basis_;
    std::vector<int> pivots_;
};

}  // namespace cobord

#pragma once

#include <stdexcept>
#include <vector>

#include "tamelat/fq.hpp"
#include "tamelat/witt.hpp"

namespace tamelat {

/// Dense matrix over a field/ring handle F (see FqF, CycF, ONF).
template <class F>
struct Mat {
    int r = 0, c = 0;
    std::vector<typename F::Elem> a;

    Mat() = default;
    Mat(int rr, int cc, typename F::Elem z) : r(rr), c(cc), a((size_t)rr * cc, z) {}

    typename F::Elem& at(int i, int j) { return a[(size_t)i * c + j]; }
    const typename F::Elem& at(int i, int j) const { return a[(size_t)i * c + j]; }
};

template <class F>
Mat<F> mat_zero(const F& f, int r, int c) {
    return Mat<F>(r, c, f.zero());
}

template <class F>
Mat<F> mat_id(const F& f, int n) {
    Mat<F> m(n, n, f.zero());
    for (int i = 0; i < n; ++i) m.at(i, i) = f.one();
    return m;
}

template <class F>
Mat<F> mat_mul(const F& f, const Mat<F>& A, const Mat<F>& B) {
    if (A.c != B.r) throw std::runtime_error("mat_mul: shape mismatch");
    Mat<F> R(A.r, B.c, f.zero());
    for (int i = 0; i < A.r; ++i)
        for (int k = 0; k < A.c; ++k) {
            const auto& aik = A.at(i, k);
            if (f.is_zero(aik)) continue;
            for (int j = 0; j < B.c; ++j)
                R.at(i, j) = f.add(R.at(i, j), f.mul(aik, B.at(k, j)));
        }
    return R;
}

template <class F>
Mat<F> mat_add(const F& f, const Mat<F>& A, const Mat<F>& B) {
    Mat<F> R = A;
    for (size_t i = 0; i < R.a.size(); ++i) R.a[i] = f.add(R.a[i], B.a[i]);
    return R;
}

template <class F>
Mat<F> mat_sub(const F& f, const Mat<F>& A, const Mat<F>& B) {
    Mat<F> R = A;
    for (size_t i = 0; i < R.a.size(); ++i) R.a[i] = f.sub(R.a[i], B.a[i]);
    return R;
}

template <class F>
Mat<F> mat_scale(const F& f, const Mat<F>& A, const typename F::Elem& s) {
    Mat<F> R = A;
    for (auto& x : R.a) x = f.mul(x, s);
    return R;
}

template <class F>
Mat<F> transpose(const Mat<F>& A) {
    Mat<F> R;
    R.r = A.c;
    R.c = A.r;
    R.a.resize(A.a.size());
    for (int i = 0; i < A.r; ++i)
        for (int j = 0; j < A.c; ++j) R.a[(size_t)j * A.r + i] = A.at(i, j);
    return R;
}

template <class F>
Mat<F> hstack(const Mat<F>& A, const Mat<F>& B) {
    if (A.r != B.r) throw std::runtime_error("hstack: shape");
    Mat<F> R;
    R.r = A.r;
    R.c = A.c + B.c;
    R.a.resize((size_t)R.r * R.c);
    for (int i = 0; i < R.r; ++i) {
        for (int j = 0; j < A.c; ++j) R.a[(size_t)i * R.c + j] = A.at(i, j);
        for (int j = 0; j < B.c; ++j) R.a[(size_t)i * R.c + A.c + j] = B.at(i, j);
    }
    return R;
}

template <class F>
bool mat_is_zero(const F& f, const Mat<F>& A) {
    for (const auto& x : A.a)
        if (!f.is_zero(x)) return false;
    return true;
}

template <class F>
bool mat_eq(const F& f, const Mat<F>& A, const Mat<F>& B) {
    if (A.r != B.r || A.c != B.c) return false;
    for (size_t i = 0; i < A.a.size(); ++i)
        if (!f.eq(A.a[i], B.a[i])) return false;
    return true;
}

/// In-place reduced row echelon form; returns rank, records pivot columns.
template <class F>
int rref(const F& f, Mat<F>& M, std::vector<int>* pivots = nullptr) {
    int row = 0;
    if (pivots) pivots->clear();
    for (int col = 0; col < M.c && row < M.r; ++col) {
        int pr = -1;
        for (int i = row; i < M.r; ++i)
            if (!f.is_zero(M.at(i, col))) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != row)
            for (int j = 0; j < M.c; ++j) std::swap(M.at(pr, j), M.at(row, j));
        auto d = f.inv(M.at(row, col));
        for (int j = col; j < M.c; ++j) M.at(row, j) = f.mul(M.at(row, j), d);
        for (int i = 0; i < M.r; ++i) {
            if (i == row || f.is_zero(M.at(i, col))) continue;
            auto t = M.at(i, col);
            for (int j = col; j < M.c; ++j)
                M.at(i, j) = f.sub(M.at(i, j), f.mul(t, M.at(row, j)));
        }
        if (pivots) pivots->push_back(col);
        ++row;
    }
    return row;
}

template <class F>
int mat_rank(const F& f, Mat<F> M) {
    return rref(f, M);
}

/// Basis of the right kernel {x : M x = 0}, as columns.
template <class F>
Mat<F> kernel(const F& f, Mat<F> M) {
    std::vector<int> piv;
    int rk = rref(f, M, &piv);
    std::vector<char> is_piv(M.c, 0);
    for (int c : piv) is_piv[c] = 1;
    Mat<F> K(M.c, M.c - rk, f.zero());
    int kcol = 0;
    for (int c = 0; c < M.c; ++c) {
        if (is_piv[c]) continue;
        K.at(c, kcol) = f.one();
        for (int i = 0; i < rk; ++i) K.at(piv[i], kcol) = f.neg(M.at(i, c));
        ++kcol;
    }
    return K;
}

/// Solve A X = B (A with full column rank); throws if inconsistent.
template <class F>
Mat<F> solve(const F& f, const Mat<F>& A, const Mat<F>& B) {
    if (A.r != B.r) throw std::runtime_error("solve: shape");
    Mat<F> M = hstack(A, B);
    std::vector<int> piv;
    int rk = rref(f, M, &piv);
    for (int i = 0; i < rk; ++i)
        if (piv[i] >= A.c) throw std::runtime_error("solve: inconsistent system");
    for (int i = 0; i < rk; ++i)
        if (piv[i] != i) throw std::runtime_error("solve: rank-deficient A");
    if (rk != A.c) throw std::runtime_error("solve: rank-deficient A");
    Mat<F> X(A.c, B.c, f.zero());
    for (int i = 0; i < A.c; ++i)
        for (int j = 0; j < B.c; ++j) X.at(i, j) = M.at(i, A.c + j);
    return X;
}

template <class F>
Mat<F> inverse(const F& f, const Mat<F>& A) {
    return solve(f, A, mat_id(f, A.r));
}

/// Incrementally maintained column span in reduced echelon form.
template <class F>
struct ColSpan {
    const F* f = nullptr;
    int n = 0;                                      // ambient dimension
    std::vector<std::vector<typename F::Elem>> basis;  // echelonized vectors
    std::vector<int> pivots;                        // pivot row per basis vector

    ColSpan() = default;
    ColSpan(const F& ff, int dim) : f(&ff), n(dim) {}

    int dim() const { return (int)basis.size(); }

    /// Reduce v against the basis in place; returns the pivot row of the
    /// residue, or -1 if v lies in the span.
    int residue(std::vector<typename F::Elem>& v) const {
        for (size_t b = 0; b < basis.size(); ++b) {
            const auto& x = v[pivots[b]];
            if (f->is_zero(x)) continue;
            auto t = x;
            for (int i = 0; i < n; ++i) v[i] = f->sub(v[i], f->mul(t, basis[b][i]));
        }
        for (int i = 0; i < n; ++i)
            if (!f->is_zero(v[i])) return i;
        return -1;
    }

    bool contains(std::vector<typename F::Elem> v) const { return residue(v) < 0; }

    /// Add a vector; returns true if the span grew.
    bool add(std::vector<typename F::Elem> v) {
        int pv = residue(v);
        if (pv < 0) return false;
        auto d = f->inv(v[pv]);
        for (int i = 0; i < n; ++i) v[i] = f->mul(v[i], d);
        // back-substitute into existing vectors
        for (size_t b = 0; b < basis.size(); ++b) {
            auto t = basis[b][pv];
            if (f->is_zero(t)) continue;
            for (int i = 0; i < n; ++i)
                basis[b][i] = f->sub(basis[b][i], f->mul(t, v[i]));
        }
        basis.push_back(std::move(v));
        pivots.push_back(pv);
        return true;
    }

    void add_matrix_columns(const Mat<F>& M) {
        for (int j = 0; j < M.c; ++j) {
            std::vector<typename F::Elem> v(n);
            for (int i = 0; i < n; ++i) v[i] = M.at(i, j);
            add(std::move(v));
        }
    }

    Mat<F> to_matrix() const {
        Mat<F> M(n, dim(), f->zero());
        for (int j = 0; j < dim(); ++j)
            for (int i = 0; i < n; ++i) M.at(i, j) = basis[j][i];
        return M;
    }
};

// ---------------------------------------------------------------------------
// O_N = W(F_{q^2})/p^N is a chain ring: Smith normal form with p-valuation
// pivoting gives exact kernels, solutions and saturations up to the tracked
// precision.
// ---------------------------------------------------------------------------

struct ONF {
    const WittRing* R = nullptr;
    using Elem = ONElem;
    Elem zero() const { return R->zero(); }
    Elem one() const { return R->one(); }
    Elem add(const Elem& a, const Elem& b) const { return R->add(a, b); }
    Elem sub(const Elem& a, const Elem& b) const { return R->sub(a, b); }
    Elem neg(const Elem& a) const { return R->neg(a); }
    Elem mul(const Elem& a, const Elem& b) const { return R->mul(a, b); }
    Elem inv(const Elem& a) const { return R->inv(a); }  // units only
    bool is_zero(const Elem& a) const { return R->is_zero(a); }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
};

using MatON = Mat<ONF>;

/// A = Uinv . diag(p^{dvals}) . Vinv with U, V changes of basis recorded
/// both ways.  dvals are sorted ascending; N stands for a zero divisorless
/// entry at working precision.
struct SmithON {
    MatON P, Pinv, Q, Qinv;  // P A Q = D
    std::vector<int> dvals;
    int rank_strict(int margin) const {  // divisors certified < N - margin
        int r = 0;
        for (int v : dvals)
            if (v < cap - margin) ++r;
        return r;
    }
    int cap = 0;  // precision N of the ring
};

SmithON smith_on(const ONF& f, MatON A);

/// Solve A X = B over O_N.  Requires every divisor of A to divide the
/// corresponding transformed entries of B exactly; unique when A has unit
/// divisors (our use case); throws otherwise unless relax_unique.
MatON on_solve(const ONF& f, const MatON& A, const MatON& B, bool relax_unique = false);

/// Echelonized basis of the saturation of the column span (divisors
/// stripped).  max_div returns the largest divisor removed.
MatON on_saturate_columns(const ONF& f, const MatON& A, int* max_div = nullptr);

/// Reduce mod p to the residue field.
Mat<FqF> on_reduce(const ONF& f, const MatON& A);

/// Lift digitwise (any preimage of the reduction).
MatON on_lift(const ONF& f, const Mat<FqF>& A);

}  // namespace tamelat

#include "tamelat/linalg.hpp"

namespace tamelat {

namespace {

void row_swap(MatON& M, int i, int j) {
    for (int k = 0; k < M.c; ++k) std::swap(M.at(i, k), M.at(j, k));
}
void col_swap(MatON& M, int i, int j) {
    for (int k = 0; k < M.r; ++k) std::swap(M.at(k, i), M.at(k, j));
}
void row_scale(const ONF& f, MatON& M, int i, const ONElem& u) {
    for (int k = 0; k < M.c; ++k) M.at(i, k) = f.mul(M.at(i, k), u);
}
void col_scale(const ONF& f, MatON& M, int j, const ONElem& u) {
    for (int k = 0; k < M.r; ++k) M.at(k, j) = f.mul(M.at(k, j), u);
}
void row_axpy(const ONF& f, MatON& M, int dst, int src, const ONElem& c) {
    for (int k = 0; k < M.c; ++k) M.at(dst, k) = f.add(M.at(dst, k), f.mul(c, M.at(src, k)));
}
void col_axpy(const ONF& f, MatON& M, int dst, int src, const ONElem& c) {
    for (int k = 0; k < M.r; ++k) M.at(k, dst) = f.add(M.at(k, dst), f.mul(c, M.at(k, src)));
}

}  // namespace

SmithON smith_on(const ONF& f, MatON A) {
    const WittRing& R = *f.R;
    SmithON S;
    S.cap = R.N;
    S.P = mat_id(f, A.r);
    S.Pinv = mat_id(f, A.r);
    S.Q = mat_id(f, A.c);
    S.Qinv = mat_id(f, A.c);
    int m = std::min(A.r, A.c);
    for (int t = 0; t < m; ++t) {
        // locate the minimum-valuation entry in the trailing block
        int bi = -1, bj = -1, bv = R.N;
        for (int i = t; i < A.r; ++i)
            for (int j = t; j < A.c; ++j) {
                int v = R.val(A.at(i, j));
                if (v < bv) { bv = v; bi = i; bj = j; }
            }
        if (bi < 0 || bv >= R.N) {
            for (int k = t; k < m; ++k) S.dvals.push_back(R.N);
            break;
        }
        if (bi != t) { row_swap(A, bi, t); row_swap(S.P, bi, t); col_swap(S.Pinv, bi, t); }
        if (bj != t) { col_swap(A, bj, t); col_swap(S.Q, bj, t); row_swap(S.Qinv, bj, t); }
        // pivot = p^bv * unit; normalize to p^bv
        ONElem unit = R.div_p(A.at(t, t), bv);
        ONElem uinv = R.inv(unit);
        row_scale(f, A, t, uinv);
        row_scale(f, S.P, t, uinv);
        col_scale(f, S.Pinv, t, unit);
        // clear the rest of row/column t
        for (int i = t + 1; i < A.r; ++i) {
            const ONElem& x = A.at(i, t);
            if (R.is_zero(x)) continue;
            ONElem q = R.div_p(x, bv);  // exact: val >= bv
            ONElem c = R.neg(q);
            row_axpy(f, A, i, t, c);
            row_axpy(f, S.P, i, t, c);
            col_axpy(f, S.Pinv, t, i, q);
        }
        for (int j = t + 1; j < A.c; ++j) {
            const ONElem& x = A.at(t, j);
            if (R.is_zero(x)) continue;
            ONElem q = R.div_p(x, bv);
            ONElem c = R.neg(q);
            col_axpy(f, A, j, t, c);
            col_axpy(f, S.Q, j, t, c);
            row_axpy(f, S.Qinv, t, j, q);
        }
        S.dvals.push_back(bv);
    }
    return S;
}

MatON on_solve(const ONF& f, const MatON& A, const MatON& B, bool relax_unique) {
    const WittRing& R = *f.R;
    SmithON S = smith_on(f, A);
    // A X = B  <=>  D (Qinv X) = P B
    MatON PB = mat_mul(f, S.P, B);
    int m = (int)S.dvals.size();
    MatON Y(A.c, B.c, f.zero());
    for (int i = 0; i < A.r; ++i) {
        int dv = (i < m) ? S.dvals[i] : R.N;
        for (int j = 0; j < B.c; ++j) {
            const ONElem& b = PB.at(i, j);
            if (dv >= R.N) {
                if (!R.is_zero(b)) throw std::runtime_error("on_solve: inconsistent");
                continue;
            }
            if (R.val(b) < dv) throw std::runtime_error("on_solve: not divisible");
            if (dv > 0 && !relax_unique)
                throw std::runtime_error("on_solve: non-unit divisor, solution not unique");
            Y.at(i, j) = R.div_p(b, dv);
        }
    }
    return mat_mul(f, S.Q, Y);
}

MatON on_saturate_columns(const ONF& f, const MatON& A, int* max_div) {
    const WittRing& R = *f.R;
    SmithON S = smith_on(f, A);
    int margin = 2;
    int r = 0, mx = 0;
    for (int v : S.dvals) {
        if (v < R.N - margin) {
            ++r;
            if (v > mx) mx = v;
        } else if (v < R.N) {
            throw std::runtime_error("on_saturate_columns: divisor too close to precision");
        }
    }
    if (max_div) *max_div = mx;
    MatON B(A.r, r, f.zero());
    for (int j = 0; j < r; ++j)
        for (int i = 0; i < A.r; ++i) B.at(i, j) = S.Pinv.at(i, j);
    return B;
}

Mat<FqF> on_reduce(const ONF& f, const MatON& A) {
    const WittRing& R = *f.R;
    FqF k{R.k};
    Mat<FqF> B(A.r, A.c, 0);
    for (int i = 0; i < A.r; ++i)
        for (int j = 0; j < A.c; ++j) B.at(i, j) = R.reduce(A.at(i, j));
    return B;
}

MatON on_lift(const ONF& f, const Mat<FqF>& A) {
    const WittRing& R = *f.R;
    MatON B(A.r, A.c, f.zero());
    for (int i = 0; i < A.r; ++i)
        for (int j = 0; j < A.c; ++j) {
            auto d = R.k->digits(A.at(i, j));
            ONElem e = R.zero();
            for (int t = 0; t < R.deg; ++t) e.c[t] = d[t];
            B.at(i, j) = e;
        }
    return B;
}

}  // namespace tamelat

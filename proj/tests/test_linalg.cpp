#include <doctest.h>

#include "tamelat/linalg.hpp"

using namespace tamelat;

TEST_CASE("field rref, kernel, solve over F_25") {
    const FqField& F = FqField::get(5, 2);
    FqF f{&F};
    Mat<FqF> A(3, 3, f.zero());
    // [[1,2,3],[2,4,6],[1,0,1]] over F_5 subset
    int vals[3][3] = {{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) A.at(i, j) = F.from_int(vals[i][j]);
    CHECK(mat_rank(f, A) == 2);
    Mat<FqF> K = kernel(f, A);
    CHECK(K.c == 1);
    CHECK(mat_is_zero(f, mat_mul(f, A, K)));

    // full-column-rank submatrix solve
    Mat<FqF> A2(3, 2, f.zero());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 2; ++j) A2.at(i, j) = A.at(i, j);
    Mat<FqF> B(2, 2, f.zero());
    B.at(0, 0) = F.from_int(1);
    B.at(1, 1) = F.from_int(2);
    B.at(1, 0) = F.from_int(3);
    Mat<FqF> rhs = mat_mul(f, A2, B);
    Mat<FqF> X = solve(f, A2, rhs);
    CHECK(mat_eq(f, X, B));
}

TEST_CASE("ColSpan membership and growth") {
    const FqField& F = FqField::get(5, 2);
    FqF f{&F};
    ColSpan<FqF> s(f, 4);
    CHECK(s.add({F.from_int(1), F.from_int(2), F.from_int(0), F.from_int(1)}));
    CHECK(s.add({F.from_int(0), F.from_int(1), F.from_int(1), F.from_int(0)}));
    CHECK(!s.add({F.from_int(2), F.from_int(2), F.from_int(3), F.from_int(2)}));  // 2*v1 + 3*v2
    CHECK(s.dim() == 2);
}

TEST_CASE("Smith normal form over O_N and saturation") {
    const WittRing& W = WittRing::get(5, 2, 6);
    ONF f{&W};
    MatON A(3, 3, f.zero());
    A.at(0, 0) = W.from_int(5);
    A.at(0, 1) = W.from_int(25);
    A.at(1, 1) = W.from_int(10);
    A.at(2, 2) = W.from_int(1);
    A.at(2, 0) = W.from_int(3);
    SmithON S = smith_on(f, A);
    // reconstruct: P A Q = D
    MatON D = mat_mul(f, mat_mul(f, S.P, A), S.Q);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i != j) CHECK(f.is_zero(D.at(i, j)));
        }
    CHECK(S.dvals == std::vector<int>{0, 1, 1});
    MatON PiDQi = mat_mul(f, mat_mul(f, S.Pinv, D), S.Qinv);
    CHECK(mat_eq(f, PiDQi, A));

    // saturation of a column span with p-power content
    MatON B(3, 2, f.zero());
    B.at(0, 0) = W.from_int(5);
    B.at(1, 0) = W.from_int(10);
    B.at(2, 1) = W.from_int(25);
    int mx = 0;
    MatON sat = on_saturate_columns(f, B, &mx);
    CHECK(sat.c == 2);
    CHECK(mx == 2);
}

TEST_CASE("on_solve for unit-divisor systems") {
    const WittRing& W = WittRing::get(5, 2, 6);
    ONF f{&W};
    MatON A(3, 2, f.zero());
    A.at(0, 0) = W.from_int(1);
    A.at(1, 0) = W.from_int(3);
    A.at(1, 1) = W.from_int(1);
    A.at(2, 1) = W.from_int(7);
    MatON X0(2, 1, f.zero());
    X0.at(0, 0) = W.teich(W.k->gen());
    X0.at(1, 0) = W.from_int(12);
    MatON B = mat_mul(f, A, X0);
    MatON X = on_solve(f, A, B);
    CHECK(mat_eq(f, X, X0));
}

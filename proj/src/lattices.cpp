#include "tamelat/lattices.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace tamelat {

LatticeON standard_lattice(std::shared_ptr<const GModON> amb) {
    LatticeON L;
    L.ambient = std::move(amb);
    L.basis = mat_id(L.ambient->f, L.ambient->dim);
    L.prec = L.ambient->f.R->N;
    return L;
}

void homothety_normalize(LatticeON& L) {
    const WittRing& W = *L.ambient->f.R;
    int mn = W.N;
    for (const auto& x : L.basis.a) {
        int v = W.val(x);
        if (v < mn) mn = v;
    }
    if (mn == 0 || mn >= W.N) return;
    for (auto& x : L.basis.a) x = W.div_p(x, mn);
    L.prec -= mn;
}

GModON lattice_module(const LatticeON& L) {
    const ONF& f = L.ambient->f;
    const WittRing& W = *f.R;
    SmithON S = smith_on(f, L.basis);
    int maxe = 0;
    for (int v : S.dvals) {
        if (v >= W.N) throw std::runtime_error("lattice_module: basis not full rank");
        maxe = std::max(maxe, v);
    }
    if (L.prec - maxe < 3) throw std::runtime_error("lattice_module: precision exhausted");
    GModON R;
    R.tag = L.ambient->tag;
    R.f = f;
    R.dim = L.ambient->dim;
    // B^{-1} A B with B = Pinv D Qinv: conjugate by D needs exact divisibility
    for (const auto& A : L.ambient->act) {
        MatON M1 = mat_mul(f, S.P, mat_mul(f, A, S.Pinv));
        // M2 = D^{-1} M1 D : entry (i,j) scaled by p^{e_j - e_i}
        MatON M2 = M1;
        int nn = M1.r;
        for (int i = 0; i < nn; ++i)
            for (int j = 0; j < nn; ++j) {
                int ei = S.dvals[i], ej = S.dvals[j];
                if (ei == ej) continue;
                if (ej > ei) {
                    M2.at(i, j) = W.mul_p(M1.at(i, j), ej - ei);
                } else {
                    if (W.val(M1.at(i, j)) < ei - ej)
                        throw std::runtime_error("lattice_module: lattice not stable");
                    M2.at(i, j) = W.div_p(M1.at(i, j), ei - ej);
                    // only valid mod p^{N-(ei-ej)}; precision tracked above
                }
            }
        R.act.push_back(mat_mul(f, S.Q, mat_mul(f, M2, S.Qinv)));
    }
    return R;
}

GMod lattice_mod_p(const LatticeON& L) { return reduce_mod_p(lattice_module(L)); }

LatticeON scale_p(const LatticeON& L, int k) {
    const WittRing& W = *L.ambient->f.R;
    LatticeON R = L;
    for (auto& x : R.basis.a) x = W.mul_p(x, k);
    R.prec -= k;  // top digits are gone after a later normalization
    return R;
}

LatticeON sublattice_kernel(const LatticeON& L, const Mat<FqF>& proj, bool normalize) {
    const ONF& f = L.ambient->f;
    FqF k{f.R->k};
    if (proj.c != L.rank()) throw std::runtime_error("sublattice_kernel: shape mismatch");
    // rows of proj must be onto (a surjection onto the target)
    {
        Mat<FqF> pr = proj;
        if (rref(k, pr) != proj.r) throw std::runtime_error("sublattice_kernel: target not a quotient");
    }
    Mat<FqF> K = kernel(k, proj);
    // basis in L-coordinates: lifts of ker basis plus p * complement
    ColSpan<FqF> span(k, L.rank());
    span.add_matrix_columns(K);
    std::vector<int> comp;
    for (int i = 0; i < L.rank(); ++i) {
        std::vector<FqF::Elem> e(L.rank(), k.zero());
        e[i] = k.one();
        if (span.add(e)) comp.push_back(i);
    }
    const WittRing& W = *f.R;
    MatON inL(L.rank(), L.rank(), f.zero());
    MatON Klift = on_lift(f, K);
    for (int j = 0; j < K.c; ++j)
        for (int i = 0; i < L.rank(); ++i) inL.at(i, j) = Klift.at(i, j);
    for (int j = 0; j < (int)comp.size(); ++j)
        inL.at(comp[j], K.c + j) = W.mul_p(W.one(), 1);
    LatticeON R;
    R.ambient = L.ambient;
    R.basis = mat_mul(f, L.basis, inL);
    R.prec = L.prec;
    if (normalize) homothety_normalize(R);
    return R;
}

LatticeON lattice_with_cosocle(std::shared_ptr<const GModON> amb, const IrrLabel& sigma,
                               const IrrList& irr, int max_iter) {
    LatticeON L = standard_lattice(std::move(amb));
    {
        JHMultiset jh = jh_multiset(lattice_mod_p(L), irr);
        auto it = jh.find(sigma);
        if (it == jh.end())
            throw std::runtime_error("lattice_with_cosocle: sigma is not a JH factor");
        for (const auto& [l, c] : jh)
            if (c > 1)
                throw std::runtime_error("lattice_with_cosocle: reduction not multiplicity free");
    }
    std::set<std::string> seen;
    for (int iter = 0; iter < max_iter; ++iter) {
        GMod Mbar = lattice_mod_p(L);
        CosocleResult cs = cosocle(Mbar, irr);
        auto it = cs.mult.find(sigma);
        if (it != cs.mult.end() && cs.mult.size() == 1 && it->second == 1) return L;
        // project onto the non-sigma part of the cosocle
        const FqF& k = Mbar.f;
        std::vector<Mat<FqF>> rows;
        int total = 0;
        for (const auto& [label, mod] : irr) {
            if (label == sigma) continue;
            auto maps = hom_space(Mbar, mod);
            for (auto& m : maps) {
                total += m.r;
                rows.push_back(std::move(m));
            }
        }
        Mat<FqF> proj(total, Mbar.dim, k.zero());
        int r0 = 0;
        for (const auto& m : rows) {
            for (int i = 0; i < m.r; ++i)
                for (int j = 0; j < m.c; ++j) proj.at(r0 + i, j) = m.at(i, j);
            r0 += m.r;
        }
        // reduce to independent rows
        Mat<FqF> pr = proj;
        std::vector<int> piv;
        int rk = rref(k, pr, &piv);
        Mat<FqF> proj2(rk, Mbar.dim, k.zero());
        for (int i = 0; i < rk; ++i)
            for (int j = 0; j < Mbar.dim; ++j) proj2.at(i, j) = pr.at(i, j);
        L = sublattice_kernel(L, proj2);
        // cycle detection on elementary-divisor signatures
        SmithON S = smith_on(L.ambient->f, L.basis);
        std::string sig;
        for (int v : S.dvals) sig += std::to_string(v) + ",";
        sig += "|" + jh_str(cs.mult);
        if (!seen.insert(sig).second)
            throw std::runtime_error("lattice_with_cosocle: cycling (precision too low?)");
    }
    throw std::runtime_error("lattice_with_cosocle: did not terminate");
}

LatticeON glue(const GlueSpec& spec) {
    const ONF& f = spec.L1.ambient->f;
    const FqF k{f.R->k};
    int n1 = spec.L1.rank(), n2 = spec.L2.rank();
    int wd = spec.W.dim;
    // mod-p matrix [r1 | -r2] on L1 + L2 coordinates
    Mat<FqF> R(wd, n1 + n2, k.zero());
    for (int i = 0; i < wd; ++i) {
        for (int j = 0; j < n1; ++j) R.at(i, j) = spec.r1.at(i, j);
        for (int j = 0; j < n2; ++j) R.at(i, n1 + j) = k.neg(spec.r2.at(i, j));
    }
    Mat<FqF> K = kernel(k, R);
    ColSpan<FqF> span(k, n1 + n2);
    span.add_matrix_columns(K);
    std::vector<int> comp;
    for (int i = 0; i < n1 + n2; ++i) {
        std::vector<FqF::Elem> e(n1 + n2, k.zero());
        e[i] = k.one();
        if (span.add(e)) comp.push_back(i);
    }
    const WittRing& W = *f.R;
    MatON inS(n1 + n2, n1 + n2, f.zero());
    MatON Klift = on_lift(f, K);
    for (int j = 0; j < K.c; ++j)
        for (int i = 0; i < n1 + n2; ++i) inS.at(i, j) = Klift.at(i, j);
    for (int j = 0; j < (int)comp.size(); ++j)
        inS.at(comp[j], K.c + j) = W.mul_p(W.one(), 1);

    auto ambsum = std::make_shared<GModON>(direct_sum_on(*spec.L1.ambient, *spec.L2.ambient));
    // block basis diag(B1, B2) * inS
    MatON BB(ambsum->dim, n1 + n2, f.zero());
    for (int i = 0; i < spec.L1.ambient->dim; ++i)
        for (int j = 0; j < n1; ++j) BB.at(i, j) = spec.L1.basis.at(i, j);
    for (int i = 0; i < spec.L2.ambient->dim; ++i)
        for (int j = 0; j < n2; ++j)
            BB.at(spec.L1.ambient->dim + i, n1 + j) = spec.L2.basis.at(i, j);
    LatticeON L;
    L.ambient = ambsum;
    L.basis = mat_mul(f, BB, inS);
    L.prec = std::min(spec.L1.prec, spec.L2.prec);
    homothety_normalize(L);
    return L;
}

void validate_glue_spec(const GlueSpec& spec, const IrrList& irr) {
    const FqF k{spec.L1.ambient->f.R->k};
    GMod M1 = lattice_mod_p(spec.L1);
    GMod M2 = lattice_mod_p(spec.L2);
    Mat<FqF> a = spec.r1, b = spec.r2;
    if (rref(k, a) != spec.W.dim) throw std::runtime_error("glue: r1 not surjective");
    if (rref(k, b) != spec.W.dim) throw std::runtime_error("glue: r2 not surjective");
    // equivariance
    for (size_t g = 0; g < M1.act.size(); ++g) {
        if (!mat_eq(k, mat_mul(k, spec.r1, M1.act[g]), mat_mul(k, spec.W.act[g], spec.r1)))
            throw std::runtime_error("glue: r1 not equivariant");
        if (!mat_eq(k, mat_mul(k, spec.r2, M2.act[g]), mat_mul(k, spec.W.act[g], spec.r2)))
            throw std::runtime_error("glue: r2 not equivariant");
    }
    (void)irr;
}

bool lattices_isomorphic(const LatticeON& A, const LatticeON& B) {
    GModON MA = lattice_module(A);
    GModON MB = lattice_module(B);
    auto maps = hom_space_on(MA, MB);
    if (maps.size() != 1) return false;
    // invertible after scaling: reduction has full rank once normalized
    const WittRing& W = *A.ambient->f.R;
    MatON m = maps[0];
    int mn = W.N;
    for (const auto& x : m.a) mn = std::min(mn, W.val(x));
    if (mn > 0 && mn < W.N)
        for (auto& x : m.a) x = W.div_p(x, mn);
    Mat<FqF> mbar = on_reduce(A.ambient->f, m);
    return mat_rank(FqF{W.k}, mbar) == m.r;
}

bool k1_generation_check(const LatticeON& L, const LatticeON& sub) {
    const ONF& f = L.ambient->f;
    const WittRing& W = *f.R;
    // sub in L-coordinates
    MatON SinL = on_solve(f, L.basis, sub.basis, true);
    GModON ML = lattice_module(L);
    auto k1idx = ML.tag->subset("K1");
    // span of (k-1) * sub columns, mod p^2
    const WittRing& W2 = WittRing::get(W.p, W.deg, 2);
    ONF f2{&W2};
    auto to2 = [&](const MatON& M) {
        MatON R(M.r, M.c, f2.zero());
        for (int i = 0; i < M.r; ++i)
            for (int j = 0; j < M.c; ++j) {
                ONElem e = W.mod_p(M.at(i, j), 2);
                R.at(i, j) = e;
            }
        return R;
    };
    int n = L.rank();
    MatON span(n, (int)k1idx.size() * SinL.c, f.zero());
    int c0 = 0;
    for (int g : k1idx) {
        MatON d = ML.act[g];
        for (int i = 0; i < n; ++i) d.at(i, i) = W.sub(d.at(i, i), W.one());
        MatON cols = mat_mul(f, d, SinL);
        for (int j = 0; j < cols.c; ++j)
            for (int i = 0; i < n; ++i) span.at(i, c0 + j) = cols.at(i, j);
        c0 += cols.c;
    }
    // membership of p*e_i in the span, all mod p^2
    MatON span2 = to2(span);
    MatON target(n, n, f2.zero());
    for (int i = 0; i < n; ++i) target.at(i, i) = W2.mul_p(W2.one(), 1);
    try {
        on_solve(f2, span2, target, true);
        return true;
    } catch (const std::runtime_error&) {
        return false;
    }
}

GMod k1_coinvariants(const GMod& Mbar) { return coinvariants(Mbar, "K1"); }

FiltrationReport layer_report(const GMod& Mbar, bool socle_upward, const IrrList& irr,
                              bool with_ext_search) {
    FiltrationReport rep;
    rep.socle_upward = socle_upward;
    rep.layers = socle_upward ? socle_layers(Mbar, irr) : radical_layers(Mbar, irr);
    Mat<FqF> inv = invariants(Mbar, "I1");
    if (inv.c > 0) rep.i1_inv_chars = h_eigenchars_on(Mbar, inv);
    if (with_ext_search) {
        JHMultiset jh = jh_multiset(Mbar, irr);
        bool multfree = true;
        for (const auto& [l, c] : jh)
            if (c > 1) multfree = false;
        if (multfree && jh.size() <= 5) {
            for (const auto& [a, ca] : jh)
                for (const auto& [b, cb] : jh) {
                    if (a == b) continue;
                    if (nonsplit_ext_occurs(Mbar, a, b, irr)) rep.nonsplit.push_back({a, b});
                }
        }
    }
    return rep;
}

std::string filtration_str(const std::vector<JHMultiset>& layers) {
    std::string s;
    for (size_t i = 0; i < layers.size(); ++i) {
        if (i) s += " -- ";
        s += jh_str(layers[i]);
    }
    return s;
}

}  // namespace tamelat

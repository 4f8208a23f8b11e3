#include "tamelat/quatrep.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace tamelat {

const QuatSetup& QuatSetup::get(int p, int f, int n) {
    static std::map<std::tuple<int, int, int>, QuatSetup*> cache;
    static std::mutex mx;
    std::lock_guard<std::mutex> lk(mx);
    auto key = std::make_tuple(p, f, n);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
    auto* s = new QuatSetup;
    s->p = p;
    s->f = f;
    s->n = n;
    s->P = &QuatQuotient::get(p, f, n, true);
    auto tag = std::make_shared<GroupTag>();
    tag->name = "O_D^x/Z1U" + std::to_string(n) + " (p=" + std::to_string(p) +
                ",f=" + std::to_string(f) + ")";
    tag->p = p;
    tag->f = f;
    for (int j = 0; j < 2 * f; ++j) tag->gen_names.push_back("q" + std::to_string(j));
    tag->gen_names.push_back("t");
    std::vector<int> u1;
    for (int j = 0; j < 2 * f; ++j) u1.push_back(j);
    tag->subsets["U1"] = u1;
    tag->subsets["torus"] = {2 * f};
    s->tag = tag;
    cache.emplace(key, s);
    return *s;
}

IrrList qchar_irr_list(const QuatSetup& s) {
    const FqField& F = *s.P->Fq2;
    FqF f{&F};
    long long n = F.q - 1;
    IrrList out;
    for (long long e = 0; e < n; ++e) {
        GMod M;
        M.tag = s.tag;
        M.f = f;
        M.dim = 1;
        for (int j = 0; j < 2 * s.f; ++j) M.act.push_back(mat_id(f, 1));
        Mat<FqF> t(1, 1, f.zero());
        t.at(0, 0) = F.from_dlog(e);
        M.act.push_back(t);
        out.emplace_back(IrrLabel::qchar(e, n), M);
    }
    return out;
}

DualFiltration& dual_filtration(const QuatQuotient& P) {
    static std::map<const QuatQuotient*, DualFiltration*> cache;
    static std::mutex mx;
    std::lock_guard<std::mutex> lk(mx);
    auto it = cache.find(&P);
    if (it == cache.end()) it = cache.emplace(&P, new DualFiltration(P)).first;
    return *it->second;
}

AugFiltration aug_filtration(int p, int f, int n, int maxdeg, bool check_stability) {
    const QuatQuotient& P = QuatQuotient::get(p, f, n, true);
    DualFiltration& D = dual_filtration(P);
    D.compute_upto(maxdeg + 1);
    AugFiltration out;
    out.n = n;
    for (int i = 0; i <= maxdeg; ++i) {
        out.dims.push_back(D.graded_dim(i));
        out.eigchars.push_back(D.grade_eigchars(i));
    }
    if (check_stability) {
        AugFiltration next = aug_filtration(p, f, n + 1, maxdeg, false);
        if (next.dims != out.dims || next.eigchars != out.eigchars)
            throw std::runtime_error("aug_filtration: unstable between levels " +
                                     std::to_string(n) + " and " + std::to_string(n + 1));
    }
    return out;
}

bool filtration_compare(int p, int f, int n, int i) {
    if (i == 0) return true;  // both are the whole algebra
    const QuatQuotient& P = QuatQuotient::get(p, f, n, true);
    DualFiltration& D = dual_filtration(P);
    D.compute_upto(i);
    // J-bar_{i/2} >= m^i holds by construction (products of (h-1) with
    // omega >= 1/2 each).  The content is the elementwise containment
    // (h-1) in m^{2 omega(h)} for 2 omega(h) <= i, which makes every
    // spanning product of J-bar_{i/2} land in m^i.
    for (size_t x = 0; x < P.size(); ++x) {
        int lvl = std::min(P.omega2[x], i);
        if (lvl <= 1) continue;
        GroupAlgElt v;
        v[(int)x] = P.Fq2->one();
        int ide = P.id(P.R.one());
        auto it = v.find(ide);
        if (it != v.end())
            it->second = P.Fq2->sub(it->second, P.Fq2->one());
        else
            v[ide] = P.Fq2->neg(P.Fq2->one());
        if (!D.in_mk(v, lvl)) return false;
    }
    // spot check some genuine products (h-1)(h'-1) with mixed weights
    int checked = 0;
    for (size_t x = 0; x < P.size() && checked < 64; ++x) {
        if (P.omega2[x] != 2) continue;
        for (size_t y = 0; y < P.size() && checked < 64; y += (P.size() / 37 + 1)) {
            if (P.omega2[y] != 1) continue;
            if (2 + 1 < i) continue;
            // (x-1)(y-1) = xy - x - y + 1
            GroupAlgElt v;
            const FqField& F = *P.Fq2;
            auto addto = [&](int idx, FqField::Elem c) {
                auto it = v.find(idx);
                if (it == v.end()) v[idx] = c;
                else it->second = F.add(it->second, c);
            };
            addto(P.mul_ids((int)x, (int)y), F.one());
            addto((int)x, F.neg(F.one()));
            addto((int)y, F.neg(F.one()));
            addto(P.id(P.R.one()), F.one());
            if (!D.in_mk(v, std::min(3, i))) return false;
            ++checked;
        }
    }
    return true;
}

GroupAlgElt y_element(const QuatQuotient& P, int j) {
    const FqField& F = *P.Fq2;
    GroupAlgElt out;
    for (int code = 1; code < F.q; ++code) {
        FqField::Elem lam = (FqField::Elem)code;
        FqField::Elem coef = F.inv(F.frob_iter(lam, j));
        int idx = P.id(P.R.one_plus_wpi_teich(lam));
        auto it = out.find(idx);
        if (it == out.end()) out[idx] = coef;
        else it->second = F.add(it->second, coef);
    }
    return out;
}

namespace {

GroupAlgElt alg_mul(const QuatQuotient& P, const GroupAlgElt& a, const GroupAlgElt& b) {
    const FqField& F = *P.Fq2;
    GroupAlgElt out;
    for (const auto& [xa, ca] : a)
        for (const auto& [xb, cb] : b) {
            int idx = P.mul_ids(xa, xb);
            FqField::Elem c = F.mul(ca, cb);
            auto it = out.find(idx);
            if (it == out.end()) out[idx] = c;
            else it->second = F.add(it->second, c);
        }
    return out;
}

GroupAlgElt alg_sub(const QuatQuotient& P, GroupAlgElt a, const GroupAlgElt& b) {
    const FqField& F = *P.Fq2;
    for (const auto& [x, c] : b) {
        auto it = a.find(x);
        if (it == a.end()) a[x] = F.neg(c);
        else it->second = F.sub(it->second, c);
    }
    return a;
}

GroupAlgElt elem_minus_one(const QuatQuotient& P, int idx) {
    GroupAlgElt v;
    const FqField& F = *P.Fq2;
    int ide = P.id(P.R.one());
    v[idx] = F.one();
    auto it = v.find(ide);
    if (it == v.end()) v[ide] = F.neg(F.one());
    else it->second = F.sub(it->second, F.one());
    return v;
}

}  // namespace

std::vector<FqField::Elem> bracket_gr2(const QuatQuotient& P, int i, int j) {
    DualFiltration& D = dual_filtration(P);
    GroupAlgElt yi = y_element(P, i), yj = y_element(P, j);
    GroupAlgElt comm = alg_sub(P, alg_mul(P, yi, yj), alg_mul(P, yj, yi));
    return D.grade_coords(comm, 2);
}

GammaRelationsReport gamma_relations(int p, int n) {
    GammaRelationsReport rep;
    const FqField& F = FqField::get(p, 2);
    FqField::Elem xi = F.gen();

    // footnote: gamma3 = 1 + p([xi]-[xi]^q) mod U^3, computed in O_D/varpi^3
    {
        const WittRing& W3 = WittRing::get(p, 2, 3);
        QuatRing R3(W3, 1, 3);
        QuatElem g1 = R3.one_plus_wpi_teich(F.one());
        QuatElem g2 = R3.one_plus_wpi_teich(xi);
        QuatElem g3 = R3.mul(R3.mul(g1, g2), R3.mul(R3.inv(g1), R3.inv(g2)));
        ONElem d = W3.sub(W3.teich(xi), W3.frob_iter(W3.teich(xi), 1));
        QuatElem expect{W3.add(W3.one(), W3.mul_p(d, 1)), W3.zero()};
        rep.footnote_u3 = R3.eq(g3, expect);
    }

    // gamma4 = 1+p is central on the nose
    {
        const WittRing& W = WittRing::get(p, 2, std::max((n + 1) / 2 + 1, 3));
        QuatRing R(W, 1, n);
        QuatElem g4{W.add(W.one(), W.mul_p(W.one(), 1)), W.zero()};
        QuatElem g1 = R.one_plus_wpi_teich(F.one());
        QuatElem g2 = R.one_plus_wpi_teich(xi);
        rep.gamma4_central =
            R.eq(R.mul(g4, g1), R.mul(g1, g4)) && R.eq(R.mul(g4, g2), R.mul(g2, g4));
    }

    // graded checks in U^1/U^n (no center quotient)
    const QuatQuotient& U = QuatQuotient::get(p, 1, n, false);
    DualFiltration& D = dual_filtration(U);
    QuatElem g1 = U.R.one_plus_wpi_teich(F.one());
    QuatElem g2 = U.R.one_plus_wpi_teich(xi);
    QuatElem g3 = U.R.mul(U.R.mul(g1, g2), U.R.mul(U.R.inv(g1), U.R.inv(g2)));
    int i1 = U.id(g1), i2 = U.id(g2), i3 = U.id(g3);

    auto coords3 = D.grade_coords(elem_minus_one(U, i3), 2);
    bool nz = false;
    for (auto c : coords3)
        if (c != 0) nz = true;
    rep.gamma3_nonzero_deg2 = nz;

    {
        GroupAlgElt a = elem_minus_one(U, i1), b = elem_minus_one(U, i2);
        GroupAlgElt comm = alg_sub(U, alg_mul(U, a, b), alg_mul(U, b, a));
        GroupAlgElt diff = alg_sub(U, comm, elem_minus_one(U, i3));
        rep.bracket_compatible = D.in_mk(diff, 3);
    }

    // [gamma1, gamma3] and [gamma2, gamma3] vanish in degree 3: the group
    // commutators land in U^4.  Checked by direct valuation at precision
    // varpi^6 (independent of the quotient level), and corroborated by
    // m^4-membership in the finite quotient.
    {
        const WittRing& W6 = WittRing::get(p, 2, 4);
        QuatRing R6(W6, 1, 6);
        QuatElem h1 = R6.one_plus_wpi_teich(F.one());
        QuatElem h2 = R6.one_plus_wpi_teich(xi);
        auto comm6 = [&](const QuatElem& a, const QuatElem& b) {
            return R6.mul(R6.mul(a, b), R6.mul(R6.inv(a), R6.inv(b)));
        };
        QuatElem h3 = comm6(h1, h2);
        auto vd_of = [&](const QuatElem& x) {
            QuatElem xm1{W6.sub(x.x, W6.one()), x.y};
            return R6.vD(xm1);
        };
        bool ok = vd_of(comm6(h1, h3)) >= 4 && vd_of(comm6(h2, h3)) >= 4;

        auto comm_of = [&](const QuatElem& a, const QuatElem& b) {
            return U.R.mul(U.R.mul(a, b), U.R.mul(U.R.inv(a), U.R.inv(b)));
        };
        QuatElem c13 = comm_of(g1, g3), c23 = comm_of(g2, g3);
        D.compute_upto(4);
        ok = ok && D.in_mk(elem_minus_one(U, U.id(c13)), 4);
        ok = ok && D.in_mk(elem_minus_one(U, U.id(c23)), 4);
        rep.deg3_brackets_vanish = ok;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// W_{chi,k}
// ---------------------------------------------------------------------------

GMod w_chi(const QuatSetup& s, long long chi_exp, int k) {
    const QuatQuotient& P = *s.P;
    const FqField& F = *P.Fq2;
    FqF f{&F};
    DualFiltration& D = dual_filtration(P);
    D.compute_upto(k);
    int d = D.dim_S(k);
    GMod W;
    W.tag = s.tag;
    W.f = f;
    W.dim = d;
    for (int j = 0; j < 2 * s.f; ++j) {
        auto M = D.perm_matrix_on_S(P.gen_perm[j], k);
        Mat<FqF> A(d, d, f.zero());
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) A.at(r, c) = M[c][r];  // transpose
        W.act.push_back(std::move(A));
    }
    {
        auto M = D.perm_matrix_on_S(P.conj_torus, k);
        FqField::Elem chit = F.from_dlog(chi_exp);
        Mat<FqF> A(d, d, f.zero());
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) A.at(r, c) = F.mul(chit, M[c][r]);
        W.act.push_back(std::move(A));
    }
    return W;
}

GMod wbar_chi3(const QuatSetup& s, long long chi_exp) {
    const QuatQuotient& P = *s.P;
    const FqField& F = *P.Fq2;
    FqF f{&F};
    GMod W = w_chi(s, chi_exp, 3);
    DualFiltration& D = dual_filtration(P);
    int lo = D.dim_S(2), hi = D.dim_S(3);
    // m^2 W is the span of the last (hi-lo) coordinates; decompose under the
    // torus and remove the eigencomponents with character != chi
    const Mat<FqF>& T = W.act.back();
    Mat<FqF> block(hi - lo, hi - lo, f.zero());
    for (int i = lo; i < hi; ++i)
        for (int j = lo; j < hi; ++j) block.at(i - lo, j - lo) = T.at(i, j);
    long long n = F.q - 1;
    FqField::Elem chi_val = F.from_dlog(chi_exp);
    ColSpan<FqF> kill(f, W.dim);
    for (long long e = 0; e < n; ++e) {
        FqField::Elem w = F.from_dlog(e);
        if (w == chi_val) continue;
        Mat<FqF> C = block;
        for (int i = 0; i < C.r; ++i) C.at(i, i) = f.sub(C.at(i, i), w);
        Mat<FqF> K = kernel(f, C);
        for (int j = 0; j < K.c; ++j) {
            std::vector<FqF::Elem> v(W.dim, f.zero());
            for (int i = 0; i < K.r; ++i) v[lo + i] = K.at(i, j);
            kill.add(std::move(v));
        }
    }
    return quotient_module(W, kill.to_matrix());
}

int ext1_chars(int p, int f, long long psi_exp, long long chi_exp, int n) {
    auto mult_at = [&](int level) {
        const QuatQuotient& P = QuatQuotient::get(p, f, level, true);
        DualFiltration& D = dual_filtration(P);
        auto exps = D.grade_eigchars(1);
        long long mod = (long long)P.Fq2->q - 1;
        long long lam = (((psi_exp - chi_exp) % mod) + mod) % mod;
        long long want = ((-lam) % mod + mod) % mod;
        int cnt = 0;
        for (auto e : exps)
            if (e == want) ++cnt;
        return cnt;
    };
    int a = mult_at(n), b = mult_at(n + 1);
    if (a != b) throw std::runtime_error("ext1_chars: unstable between levels");
    return a;
}

// ---------------------------------------------------------------------------
// the section-6 chain
// ---------------------------------------------------------------------------

bool psi_regular(int p, long long e) {
    long long n = (long long)p * p - 1;
    e = ((e % n) + n) % n;
    return e % (p + 1) != 0;
}

namespace {

// The central normalization: lambda(u) is the square root in 1 + pO_L of
// the principal-unit part of Nrd(u), so lambda(z) = z on Z^1 and lambda = 1
// on Teichmueller elements; on 1 + varpi [mu] it is sqrt(1 - p [Nm mu]).
// Twisting the character piece psi_1 by lambda gives it the same Z^1-central
// character z as the Sym^1 pieces (the Hodge-Tate normalization), so glued
// lattices carry a uniform central character and reduce to honest
// O_D^x/Z^1-modules; nothing changes mod p.
ONElem lambda_of_wpi_gen(const WittRing& W, int f, FqField::Elem mu) {
    const FqField& F = *W.k;
    ONElem nrd = W.sub(W.one(), W.mul_p(W.teich(F.mul(mu, F.frob_iter(mu, f))), 1));
    return W.sqrt1p(nrd);
}

GModON quat_char_ambient(const QuatSetup& s, int N, long long psi_exp) {
    const WittRing& W = WittRing::get(s.p, 2 * s.f, N);
    ONF f{&W};
    const FqField& F = *W.k;
    GModON M;
    M.tag = s.tag;
    M.f = f;
    M.dim = 1;
    for (int j = 0; j < 2 * s.f; ++j) {
        MatON A(1, 1, f.zero());
        A.at(0, 0) = lambda_of_wpi_gen(W, s.f, F.pow(F.gen(), j));
        M.act.push_back(A);
    }
    MatON t(1, 1, f.zero());
    long long n = F.q - 1;
    t.at(0, 0) = W.pow(W.teich(F.gen()), ((psi_exp % n) + n) % n);
    M.act.push_back(t);
    return M;
}

GModON quat_sym1_ambient(const QuatSetup& s, int N, long long psi_exp) {
    const WittRing& W = WittRing::get(s.p, 2 * s.f, N);
    ONF f{&W};
    const FqField& F = *W.k;
    long long n = F.q - 1;
    GModON M;
    M.tag = s.tag;
    M.f = f;
    M.dim = 2;
    // x + varpi y acts on (X, Y) through varpi -> (0 1; p 0), a -> diag(a, sigma(a)):
    // X -> xX + pyY, Y -> sigma(y)X + sigma(x)Y.
    auto sym1_of = [&](const ONElem& x, const ONElem& y) {
        MatON A(2, 2, f.zero());
        A.at(0, 0) = x;
        A.at(0, 1) = W.frob_iter(y, s.f);
        A.at(1, 0) = W.mul_p(y, 1);
        A.at(1, 1) = W.frob_iter(x, s.f);
        return A;
    };
    ONElem scal = W.pow(W.teich(F.gen()), ((psi_exp % n) + n) % n);
    for (int j = 0; j < 2 * s.f; ++j) {
        MatON A = sym1_of(W.one(), W.teich(F.pow(F.gen(), j)));
        M.act.push_back(A);  // psi is trivial on U^1
    }
    MatON T = sym1_of(W.teich(F.gen()), W.zero());
    for (auto& x : T.a) x = W.mul(x, scal);
    M.act.push_back(T);
    return M;
}

Mat<FqF> cosocle_map_to_char(const GMod& Mbar, const GMod& chi_mod) {
    auto maps = hom_space(Mbar, chi_mod);
    if (maps.empty()) throw std::runtime_error("theta chain: no map to the cosocle character");
    return maps[0];
}

}  // namespace

ThetaChain build_theta_chain(int p, int a, long long b, int N, int level_n) {
    if (a < -2 || a > p - 2) throw std::runtime_error("build_theta_chain: a out of range");
    long long n = (long long)p * p - 1;
    ThetaChain ch;
    ch.a = a;
    ch.b = b;
    ch.chi_exp = (((a + 2 + (p + 1) * b) % n) + n) % n;
    ch.psi1 = ch.chi_exp;
    ch.psi2 = (((a + 3 + (p + 1) * (b - 1)) % n) + n) % n;
    ch.psi3 = (((a + 1 + (p + 1) * b) % n) + n) % n;
    for (long long e : {ch.psi1, ch.psi2, ch.psi3})
        if (!psi_regular(p, e))
            throw std::runtime_error("build_theta_chain: psi = psi^p for an exponent");

    const QuatSetup& s = QuatSetup::get(p, 1, level_n);
    IrrList irr = qchar_irr_list(s);
    IrrLabel chi = IrrLabel::qchar(ch.chi_exp, n);
    long long alpha = p - 1;

    auto amb1 = std::make_shared<GModON>(quat_char_ambient(s, N, ch.psi1));
    auto amb2 = std::make_shared<GModON>(quat_sym1_ambient(s, N, ch.psi2));
    auto amb3 = std::make_shared<GModON>(quat_sym1_ambient(s, N, ch.psi3));

    ch.Theta1 = standard_lattice(amb1);
    ch.Theta2 = lattice_with_cosocle(amb2, chi, irr);
    ch.Theta3 = lattice_with_cosocle(amb3, chi, irr);

    // sanity on the reductions
    {
        JHMultiset jh2 = jh_multiset(lattice_mod_p(ch.Theta2), irr);
        JHMultiset want2;
        want2[chi] += 1;
        want2[IrrLabel::qchar(ch.chi_exp - alpha, n)] += 1;
        if (jh2 != want2) throw std::runtime_error("theta chain: V2 reduction mismatch");
        JHMultiset jh3 = jh_multiset(lattice_mod_p(ch.Theta3), irr);
        JHMultiset want3;
        want3[chi] += 1;
        want3[IrrLabel::qchar(ch.chi_exp + alpha, n)] += 1;
        if (jh3 != want3) throw std::runtime_error("theta chain: V3 reduction mismatch");
    }

    const GMod* chi_mod = nullptr;
    for (const auto& [l, m] : irr)
        if (l == chi) chi_mod = &m;

    // glue Theta1 and Theta2 along chi
    GMod M1 = lattice_mod_p(ch.Theta1);
    GMod M2 = lattice_mod_p(ch.Theta2);
    GlueSpec g1;
    g1.L1 = ch.Theta1;
    g1.L2 = ch.Theta2;
    g1.W = *chi_mod;
    g1.r1 = cosocle_map_to_char(M1, *chi_mod);
    g1.r2 = cosocle_map_to_char(M2, *chi_mod);
    validate_glue_spec(g1, irr);
    ch.Theta = glue(g1);

    GMod MT = lattice_mod_p(ch.Theta);
    ch.theta_layers = radical_layers(MT, irr);
    {
        std::vector<JHMultiset> want(3);
        want[0][chi] = 1;
        want[1][IrrLabel::qchar(ch.chi_exp - alpha, n)] = 1;
        want[2][chi] = 1;
        ch.theta_filtration_ok = (ch.theta_layers == want);
    }

    // glue Theta and Theta3 along chi, via the cosocle map of Theta/p
    GlueSpec g2;
    g2.L1 = ch.Theta;
    g2.L2 = ch.Theta3;
    g2.W = *chi_mod;
    g2.r1 = cosocle_map_to_char(MT, *chi_mod);
    g2.r2 = cosocle_map_to_char(lattice_mod_p(ch.Theta3), *chi_mod);
    validate_glue_spec(g2, irr);
    ch.ThetaTilde = glue(g2);

    GMod MTt = lattice_mod_p(ch.ThetaTilde);
    ch.tilde_dim = MTt.dim;
    {
        CosocleResult cs = cosocle(MTt, irr);
        JHMultiset want;
        want[chi] = 1;
        ch.tilde_cosocle_ok = (cs.mult == want);
    }
    {
        GMod Wbar = wbar_chi3(s, ch.chi_exp);
        ch.tilde_iso_wbar = (MTt.dim == Wbar.dim) && is_isomorphic(MTt, Wbar);
    }
    {
        // killed by m^3: iterated augmentation span over the U1 generators
        Mat<FqF> m1 = augmentation_span(MTt, "U1");
        GMod sub1 = sub_module(MTt, m1);
        Mat<FqF> m2 = augmentation_span(sub1, "U1");
        GMod sub2 = sub_module(sub1, m2);
        Mat<FqF> m3 = augmentation_span(sub2, "U1");
        ch.tilde_killed_m3 = (m3.c == 0);
    }
    return ch;
}

}  // namespace tamelat

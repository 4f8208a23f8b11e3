#include "tamelat/gl2types.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>
#include <tuple>

namespace tamelat {

// ---------------------------------------------------------------------------
// O_N module helpers
// ---------------------------------------------------------------------------

GMod reduce_mod_p(const GModON& M) {
    GMod R;
    R.tag = M.tag;
    R.f = FqF{M.f.R->k};
    R.dim = M.dim;
    for (const auto& A : M.act) R.act.push_back(on_reduce(M.f, A));
    return R;
}

GModON direct_sum_on(const GModON& A, const GModON& B) {
    if (!A.tag->same(*B.tag)) throw std::runtime_error("direct_sum_on: tag mismatch");
    GModON R;
    R.tag = A.tag;
    R.f = A.f;
    R.dim = A.dim + B.dim;
    for (size_t g = 0; g < A.act.size(); ++g) {
        MatON m = mat_zero(A.f, R.dim, R.dim);
        for (int i = 0; i < A.dim; ++i)
            for (int j = 0; j < A.dim; ++j) m.at(i, j) = A.act[g].at(i, j);
        for (int i = 0; i < B.dim; ++i)
            for (int j = 0; j < B.dim; ++j) m.at(A.dim + i, A.dim + j) = B.act[g].at(i, j);
        R.act.push_back(std::move(m));
    }
    return R;
}

GModON tensor_on(const GModON& A, const GModON& B) {
    if (!A.tag->same(*B.tag)) throw std::runtime_error("tensor_on: tag mismatch");
    GModON R;
    R.tag = A.tag;
    R.f = A.f;
    R.dim = A.dim * B.dim;
    for (size_t g = 0; g < A.act.size(); ++g) {
        MatON m = mat_zero(A.f, R.dim, R.dim);
        for (int i1 = 0; i1 < A.dim; ++i1)
            for (int j1 = 0; j1 < A.dim; ++j1) {
                const auto& a = A.act[g].at(i1, j1);
                if (A.f.is_zero(a)) continue;
                for (int i2 = 0; i2 < B.dim; ++i2)
                    for (int j2 = 0; j2 < B.dim; ++j2)
                        m.at(i1 * B.dim + i2, j1 * B.dim + j2) =
                            A.f.mul(a, B.act[g].at(i2, j2));
            }
        R.act.push_back(std::move(m));
    }
    return R;
}

std::vector<MatON> hom_space_on(const GModON& M, const GModON& N) {
    if (!M.tag->same(*N.tag)) throw std::runtime_error("hom_space_on: tag mismatch");
    const ONF& f = M.f;
    int nm = N.dim * M.dim;
    MatON sys((int)M.act.size() * nm, nm, f.zero());
    int rows = 0;
    for (size_t g = 0; g < M.act.size(); ++g) {
        for (int i = 0; i < N.dim; ++i)
            for (int j = 0; j < M.dim; ++j) {
                int r = rows + i * M.dim + j;
                for (int k = 0; k < N.dim; ++k) {
                    const auto& c = N.act[g].at(i, k);
                    if (!f.is_zero(c)) {
                        int col = k * M.dim + j;
                        sys.at(r, col) = f.add(sys.at(r, col), c);
                    }
                }
                for (int k = 0; k < M.dim; ++k) {
                    const auto& c = M.act[g].at(k, j);
                    if (!f.is_zero(c)) {
                        int col = i * M.dim + k;
                        sys.at(r, col) = f.sub(sys.at(r, col), c);
                    }
                }
            }
        rows += nm;
    }
    SmithON S = smith_on(f, sys);
    const WittRing& R = *f.R;
    std::vector<MatON> out;
    int m = (int)S.dvals.size();
    for (int i = 0; i < sys.c; ++i) {
        int dv = (i < m) ? S.dvals[i] : R.N;
        if (dv == 0) continue;
        if (dv < R.N) continue;  // torsion solutions are not honest maps
        MatON e(sys.c, 1, f.zero());
        e.at(i, 0) = R.one();
        MatON x = mat_mul(f, S.Q, e);
        MatON phi(N.dim, M.dim, f.zero());
        bool nonzero = false;
        for (int a = 0; a < N.dim; ++a)
            for (int b = 0; b < M.dim; ++b) {
                phi.at(a, b) = x.at(a * M.dim + b, 0);
                if (!f.is_zero(phi.at(a, b))) nonzero = true;
            }
        if (nonzero) out.push_back(std::move(phi));
    }
    return out;
}

// ---------------------------------------------------------------------------
// setups
// ---------------------------------------------------------------------------

const GL2Setup& GL2Setup::get(int p, int level) {
    static std::map<std::pair<int, int>, GL2Setup*> cache;
    static std::mutex mx;
    std::lock_guard<std::mutex> lk(mx);
    auto key = std::make_pair(p, level);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
    auto* s = new GL2Setup;
    s->grp = (level == 1) ? GenGroup::gamma(p) : GenGroup::gl2_witt(p, level);
    auto tag = std::make_shared<GroupTag>();
    tag->name = s->grp.name;
    tag->p = p;
    tag->f = 1;
    tag->gen_names = s->grp.gen_names;
    tag->subsets["U"] = {0};
    tag->subsets["H"] = {1, 2};
    tag->subsets["B"] = {0, 1, 2};
    if (level > 1) {
        tag->subsets["K1"] = {4, 5, 6, 7};
        tag->subsets["I1"] = {0, 4, 5, 6, 7};
    } else {
        tag->subsets["I1"] = {0};
    }
    s->tag = tag;
    cache.emplace(key, s);
    return *s;
}

// ---------------------------------------------------------------------------
// Serre weights
// ---------------------------------------------------------------------------

GMod serre_weight_module(const GL2Setup& s, const FqField& F, int m, int n) {
    int p = s.grp.p;
    if (m < 0 || m > p - 1) throw std::runtime_error("serre_weight_module: m out of range");
    GMod R;
    R.tag = s.tag;
    R.f = FqF{&F};
    R.dim = m + 1;
    std::vector<std::vector<long long>> binom(m + 1, std::vector<long long>(m + 1, 0));
    for (int i = 0; i <= m; ++i) {
        binom[i][0] = 1;
        for (int j = 1; j <= i; ++j)
            binom[i][j] = (binom[i - 1][j - 1] + (j <= i - 1 ? binom[i - 1][j] : 0)) % p;
    }
    int nexp = ((n % (p - 1)) + (p - 1)) % (p - 1);
    for (const auto& gmat : s.grp.gens) {
        FqF::Elem a = F.from_int(gmat.a[0]), b = F.from_int(gmat.a[1]);
        FqF::Elem c = F.from_int(gmat.a[2]), d = F.from_int(gmat.a[3]);
        FqF::Elem det = F.sub(F.mul(a, d), F.mul(b, c));
        FqF::Elem dtn = (nexp == 0) ? F.one() : F.pow(det, nexp);
        Mat<FqF> A(m + 1, m + 1, F.zero());
        for (int i = 0; i <= m; ++i) {
            std::vector<FqF::Elem> f1(i + 1), f2(m - i + 1);
            for (int k = 0; k <= i; ++k) {
                FqF::Elem ak = (k == 0) ? F.one() : F.pow(a, k);
                FqF::Elem ck = (i - k == 0) ? F.one() : F.pow(c, i - k);
                f1[k] = F.mul(F.from_int(binom[i][k]), F.mul(ak, ck));
            }
            for (int l = 0; l <= m - i; ++l) {
                FqF::Elem bl = (l == 0) ? F.one() : F.pow(b, l);
                FqF::Elem dl = (m - i - l == 0) ? F.one() : F.pow(d, m - i - l);
                f2[l] = F.mul(F.from_int(binom[m - i][l]), F.mul(bl, dl));
            }
            for (int k = 0; k <= i; ++k)
                for (int l = 0; l <= m - i; ++l)
                    A.at(k + l, i) = F.add(A.at(k + l, i), F.mul(f1[k], f2[l]));
        }
        for (auto& x : A.a) x = F.mul(x, dtn);
        R.act.push_back(std::move(A));
    }
    return R;
}

IrrList serre_irr_list(const GL2Setup& s, const FqField& F) {
    int p = s.grp.p;
    IrrList out;
    for (int m = 0; m <= p - 1; ++m)
        for (int n = 0; n <= p - 2; ++n)
            out.emplace_back(IrrLabel::serre(m, n, p), serre_weight_module(s, F, m, n));
    return out;
}

// ---------------------------------------------------------------------------
// Gamma tables for induced modules and the cuspidal projector
// ---------------------------------------------------------------------------

namespace {

struct GammaData {
    int p;
    GenGroup G;
    std::vector<Mat22> elems;
    std::unordered_map<std::uint64_t, int> idx;
    std::vector<int> invidx;
    TorusCosets tor;
    std::vector<std::vector<std::pair<int, int>>> mono;  // [elem][coset] = (coset', tlog)
    std::vector<std::pair<int, int>> cls;  // (kind, dlog in F_{p^2}); see below
    CosetTable borel;
    std::vector<std::pair<int, int>> borel_spart_dlogs;  // (dlog a, dlog d)
    static const GammaData& get(int p);
};

const GammaData& GammaData::get(int p) {
    static std::map<int, GammaData*> cache;
    static std::mutex mx;
    std::lock_guard<std::mutex> lk(mx);
    auto it = cache.find(p);
    if (it != cache.end()) return *it->second;
    auto* D = new GammaData;
    D->p = p;
    D->G = GenGroup::gamma(p);
    D->tor.build(p);
    D->elems = D->tor.tab.elems;
    for (int i = 0; i < (int)D->elems.size(); ++i) D->idx.emplace(D->G.encode(D->elems[i]), i);
    D->invidx.resize(D->elems.size());
    for (int i = 0; i < (int)D->elems.size(); ++i)
        D->invidx[i] = D->idx.at(D->G.encode(D->G.inv(D->elems[i])));

    int nc = D->tor.tab.ncosets;
    D->mono.assign(D->elems.size(), std::vector<std::pair<int, int>>(nc));
    for (int gi = 0; gi < (int)D->elems.size(); ++gi)
        for (int j = 0; j < nc; ++j) {
            Mat22 prod = D->G.mul(D->elems[gi], D->elems[D->tor.tab.reps[j]]);
            int k = D->idx.at(D->G.encode(prod));
            D->mono[gi][j] = {D->tor.tab.coset_of[k], D->tor.sub_dlog[D->tor.tab.spart_of[k]]};
        }

    const FqField& F2 = FqField::get(p, 2);
    const FqField& F1 = FqField::get(p, 1);
    D->cls.resize(D->elems.size());
    for (int gi = 0; gi < (int)D->elems.size(); ++gi) {
        const Mat22& g = D->elems[gi];
        long long T = (g.a[0] + g.a[3]) % p;
        long long DD = ((g.a[0] * g.a[3] - g.a[1] * g.a[2]) % p + p) % p;
        long long disc = ((T * T - 4 * DD) % p + p * p) % p;
        bool scalar = (g.a[1] % p == 0 && g.a[2] % p == 0 && g.a[0] % p == g.a[3] % p);
        if (scalar) {
            D->cls[gi] = {0, F2.dlog(F2.from_int(g.a[0]))};
        } else if (disc == 0) {
            long long z = T * ((p + 1) / 2) % p;  // T/2 mod p
            D->cls[gi] = {1, F2.dlog(F2.from_int(z))};
        } else if (F1.dlog(F1.from_int(disc)) % 2 == 0) {
            D->cls[gi] = {2, 0};
        } else {
            FqField::Elem dsc = F2.from_int(disc);
            int d2 = F2.dlog(dsc);  // even: disc is a square in F_{p^2}
            FqField::Elem rt = F2.from_dlog(d2 / 2);
            FqField::Elem t = F2.mul(F2.add(F2.from_int(T), rt), F2.inv(F2.from_int(2)));
            D->cls[gi] = {3, F2.dlog(t)};
        }
    }

    D->borel.build(D->G, D->G.subgroups.at("B"));
    D->borel_spart_dlogs.resize(D->borel.sub.size());
    for (int i = 0; i < (int)D->borel.sub.size(); ++i) {
        const Mat22& b = D->borel.sub[i];
        D->borel_spart_dlogs[i] = {F1.dlog(F1.from_int(b.a[0])), F1.dlog(F1.from_int(b.a[3]))};
    }
    cache.emplace(p, D);
    return *D;
}

// integer coefficient vectors modulo Phi_n
struct CycIntCtx {
    const CycloField* C;
    std::vector<std::vector<long long>> zred;
    explicit CycIntCtx(const CycloField& CC) : C(&CC) {
        int L = std::max(CC.n, 2 * CC.phi - 1);
        zred.assign(L, std::vector<long long>(CC.phi, 0));
        for (int i = 0; i < CC.phi; ++i) zred[i][i] = 1;
        for (int i = CC.phi; i < L; ++i) {
            std::vector<long long> t(CC.phi + 1, 0);
            for (int j = 0; j < CC.phi; ++j) t[j + 1] = zred[i - 1][j];
            long long top = t[CC.phi];
            for (int j = 0; j < CC.phi; ++j) t[j] -= top * CC.cyclopoly[j];
            t.resize(CC.phi);
            zred[i] = t;
        }
    }
};

using IVec = std::vector<long long>;

void ivec_mul_acc(const CycIntCtx& ctx, const IVec& a, const IVec& b, IVec& acc) {
    int phi = ctx.C->phi;
    std::vector<long long> t(2 * phi - 1, 0);
    for (int i = 0; i < phi; ++i) {
        if (!a[i]) continue;
        for (int j = 0; j < phi; ++j) t[i + j] += a[i] * b[j];
    }
    for (int s = 0; s < 2 * phi - 1; ++s) {
        if (!t[s]) continue;
        const auto& zr = ctx.zred[s];
        for (int j = 0; j < phi; ++j) acc[j] += t[s] * zr[j];
    }
}

MatON torus_monomial_on(const GammaData& D, const WittRing& W, int gi, long long e) {
    ONF f{&W};
    int nc = D.tor.tab.ncosets;
    MatON A(nc, nc, f.zero());
    ONElem tg = W.teich(W.k->gen());
    long long n = W.k->q - 1;
    for (int j = 0; j < nc; ++j) {
        auto [j2, tl] = D.mono[gi][j];
        A.at(j2, j) = W.pow(tg, ((e * tl) % n + n) % n);
    }
    return A;
}

Mat<CycF> torus_monomial_cyc(const GammaData& D, const CycloField& C, int gi, long long e) {
    CycF f{&C};
    int nc = D.tor.tab.ncosets;
    Mat<CycF> A(nc, nc, f.zero());
    for (int j = 0; j < nc; ++j) {
        auto [j2, tl] = D.mono[gi][j];
        A.at(j2, j) = C.zeta_pow(e * tl);
    }
    return A;
}

void spot_check_relations(const GenGroup& G, const std::vector<MatON>& act, const ONF& f,
                          int dim, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> pick(0, (int)G.gens.size() - 1);
    std::uniform_int_distribution<int> len(2, 6);
    std::map<std::uint64_t, std::pair<std::vector<int>, MatON>> dict;
    int checks = 0;
    for (int iter = 0; iter < 500 && checks < 6; ++iter) {
        int L = len(rng);
        std::vector<int> word(L);
        Mat22 gp = G.id();
        MatON m = mat_id(f, dim);
        for (int i = 0; i < L; ++i) {
            word[i] = pick(rng);
            gp = G.mul(gp, G.gens[word[i]]);
            m = mat_mul(f, m, act[word[i]]);
        }
        auto key = G.encode(gp);
        auto it = dict.find(key);
        if (it == dict.end()) {
            dict.emplace(key, std::make_pair(word, std::move(m)));
        } else if (it->second.first != word) {
            if (!mat_eq(f, it->second.second, m))
                throw std::runtime_error("module action violates a group relation");
            ++checks;
        }
    }
    if (checks == 0) throw std::runtime_error("spot_check_relations: no collisions sampled");
}

const CycIntCtx& cyc_int_ctx(int n) {
    static std::map<int, CycIntCtx*> cache;
    static std::mutex mx;
    std::lock_guard<std::mutex> lk(mx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, new CycIntCtx(CycloField::get(n))).first;
    return *it->second;
}

}  // namespace

// ---------------------------------------------------------------------------
// theta
// ---------------------------------------------------------------------------

const TameType& theta(int p, long long e, int N) {
    long long n = (long long)p * p - 1;
    e = ((e % n) + n) % n;
    static std::map<std::tuple<int, long long, int>, TameType*> cache;
    static std::mutex mx;
    std::lock_guard<std::mutex> lk(mx);
    auto key = std::make_tuple(p, e, N);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;

    if (e % (p + 1) == 0)
        throw std::runtime_error("theta: psi factors through the norm (psi = psi^p)");

    const GammaData& D = GammaData::get(p);
    const CycloField& C = CycloField::get((int)n);
    const WittRing& W = WittRing::get(p, 2, N);
    const CycIntCtx& ictx = cyc_int_ctx((int)n);

    // auxiliary induction character: same central restriction, not psi or psi^p
    long long eaux = -1;
    for (long long k = 1; k <= p; ++k) {
        long long cand = (e + (p - 1) * k) % n;
        if (cand != e && cand != (e * p) % n) { eaux = cand; break; }
    }
    if (eaux < 0) throw std::runtime_error("theta: no auxiliary character");

    int nc = D.tor.tab.ncosets;  // p(p-1)
    int phi = C.phi;

    // cuspidal character values as (coefficient, zeta-exponent) term lists
    auto chi_terms = [&](int gi) {
        std::vector<std::pair<long long, long long>> terms;
        auto [kind, dl] = D.cls[gi];
        switch (kind) {
            case 0: terms.push_back({p - 1, (e * dl) % n}); break;
            case 1: terms.push_back({-1, (e * dl) % n}); break;
            case 2: break;
            case 3:
                terms.push_back({-1, (e * dl) % n});
                terms.push_back({-1, (e * p % n) * dl % n});
                break;
        }
        return terms;
    };

    // raw accumulation of Q = sum_g chi(g^{-1}) rho(g) in exponent space
    std::vector<IVec> Qint((size_t)nc * nc, IVec(phi, 0));
    {
        std::vector<IVec> raw((size_t)nc * nc, IVec(n, 0));
        for (int gi = 0; gi < (int)D.elems.size(); ++gi) {
            auto terms = chi_terms(D.invidx[gi]);
            if (terms.empty()) continue;
            const auto& row = D.mono[gi];
            for (int j = 0; j < nc; ++j) {
                auto [j2, tl] = row[j];
                long long base = (eaux * tl) % n;
                auto& cell = raw[(size_t)j2 * nc + j];
                for (auto [cf, ex] : terms) cell[(ex + base) % n] += cf;
            }
        }
        for (size_t c = 0; c < raw.size(); ++c) {
            for (int k = 0; k < n; ++k) {
                long long v = raw[c][k];
                if (!v) continue;
                const auto& zr = ictx.zred[k];
                for (int j = 0; j < phi; ++j) Qint[c][j] += v * zr[j];
            }
        }
    }

    // validation 1: trace(Q) = |Gamma| (multiplicity one via orthogonality)
    {
        IVec tr(phi, 0);
        for (int j = 0; j < nc; ++j)
            for (int k = 0; k < phi; ++k) tr[k] += Qint[(size_t)j * nc + j][k];
        long long order = (long long)(p * p - 1) * (p * p - p);
        if (tr[0] != order) throw std::runtime_error("theta: trace is not |Gamma|");
        for (int k = 1; k < phi; ++k)
            if (tr[k] != 0) throw std::runtime_error("theta: trace not rational");
    }

    // validation 2: idempotency up to the scalar |Gamma|/(p-1)
    {
        long long cscal = (long long)p * (p - 1) * (p + 1);
        for (int i = 0; i < nc; ++i)
            for (int j = 0; j < nc; ++j) {
                IVec acc(phi, 0);
                for (int k = 0; k < nc; ++k)
                    ivec_mul_acc(ictx, Qint[(size_t)i * nc + k], Qint[(size_t)k * nc + j], acc);
                for (int t = 0; t < phi; ++t)
                    if (acc[t] != cscal * Qint[(size_t)i * nc + j][t])
                        throw std::runtime_error("theta: projector not idempotent");
            }
    }

    // O_N image and saturation.  The divisor-stripping loses top digits, so
    // saturate at a padded precision and truncate the basis back to N, where
    // it is then the exact reduction of a stable lattice basis.
    ONF fon{&W};
    const WittRing& Wpad = WittRing::get(p, 2, N + 3);
    ONF fpad{&Wpad};
    MatON B(nc, 0, fon.zero());
    {
        MatON Qpad(nc, nc, fpad.zero());
        ONElem tg = Wpad.teich(Wpad.k->gen());
        std::vector<ONElem> tpow(phi, Wpad.one());
        for (int k = 1; k < phi; ++k) tpow[k] = Wpad.mul(tpow[k - 1], tg);
        for (int i = 0; i < nc; ++i)
            for (int j = 0; j < nc; ++j) {
                const IVec& v = Qint[(size_t)i * nc + j];
                ONElem acc = Wpad.zero();
                for (int k = 0; k < phi; ++k) {
                    if (!v[k]) continue;
                    ONElem t = tpow[k];
                    for (int d = 0; d < Wpad.deg; ++d)
                        t.c[d] = (t.c[d] * (((v[k] % Wpad.pN) + Wpad.pN) % Wpad.pN)) % Wpad.pN;
                    acc = Wpad.add(acc, t);
                }
                Qpad.at(i, j) = acc;
            }
        int maxdiv = 0;
        MatON Bpad = on_saturate_columns(fpad, Qpad, &maxdiv);
        if (Bpad.c != p - 1) throw std::runtime_error("theta: projection rank is not p-1");
        if (maxdiv > 3) throw std::runtime_error("theta: saturation divisors too large");
        B = MatON(nc, Bpad.c, fon.zero());
        for (int i = 0; i < nc; ++i)
            for (int j = 0; j < Bpad.c; ++j) B.at(i, j) = Wpad.mod_p(Bpad.at(i, j), N);
    }

    auto* T = new TameType;
    T->kind = TameKind::Cuspidal;
    T->p = p;
    T->e1 = e;
    T->e2 = eaux;
    T->dim = p - 1;
    T->C = &C;
    T->lat.tag = GL2Setup::get(p, 1).tag;
    T->lat.f = fon;
    T->lat.dim = p - 1;
    for (int g = 0; g < 4; ++g) {
        int gi = D.idx.at(D.G.encode(D.G.gens[g]));
        MatON rho = torus_monomial_on(D, W, gi, eaux);
        T->lat.act.push_back(on_solve(fon, B, mat_mul(fon, rho, B)));
    }
    spot_check_relations(D.G, T->lat.act, fon, T->dim, 12345u + (unsigned)e);

    // characteristic-zero realization: pivot columns of Q over the field
    {
        CycF fc{&C};
        Mat<CycF> Qc(nc, nc, fc.zero());
        for (int i = 0; i < nc; ++i)
            for (int j = 0; j < nc; ++j) {
                CycElem x = C.zero();
                for (int k = 0; k < phi; ++k) x.c[k] = mpq_class((long)Qint[(size_t)i * nc + j][k]);
                Qc.at(i, j) = x;
            }
        Mat<CycF> work = Qc;
        std::vector<int> piv;
        rref(fc, work, &piv);
        if ((int)piv.size() != p - 1) throw std::runtime_error("theta: char-0 rank is not p-1");
        Mat<CycF> Bc(nc, p - 1, fc.zero());
        for (int j = 0; j < p - 1; ++j)
            for (int i = 0; i < nc; ++i) Bc.at(i, j) = Qc.at(i, piv[j]);
        auto acts = std::make_shared<std::vector<Mat<CycF>>>();
        for (int g = 0; g < 4; ++g) {
            int gi = D.idx.at(D.G.encode(D.G.gens[g]));
            Mat<CycF> rho = torus_monomial_cyc(D, C, gi, eaux);
            acts->push_back(solve(fc, Bc, mat_mul(fc, rho, Bc)));
        }
        T->cyc = acts;
    }

    cache.emplace(key, T);
    return *T;
}

// ---------------------------------------------------------------------------
// principal series / Steinberg / scalar
// ---------------------------------------------------------------------------

TameType principal_series(int p, long long c1, long long c2, int N) {
    const GammaData& D = GammaData::get(p);
    const WittRing& W = WittRing::get(p, 2, N);
    const CycloField& C = CycloField::get(p * p - 1);
    long long m = p - 1;
    c1 = ((c1 % m) + m) % m;
    c2 = ((c2 % m) + m) % m;

    TameType T;
    T.kind = TameKind::PrincipalSeries;
    T.p = p;
    T.e1 = c1;
    T.e2 = c2;
    T.dim = p + 1;
    T.C = &C;
    ONF fon{&W};
    T.lat.tag = GL2Setup::get(p, 1).tag;
    T.lat.f = fon;
    T.lat.dim = p + 1;
    int nc = D.borel.ncosets;
    if (nc != p + 1) throw std::runtime_error("principal_series: coset count");
    const FqField& F1 = FqField::get(p, 1);
    ONElem t0 = W.teich(W.k->from_int(F1.gen()));
    CycF fc{&C};
    auto acts = std::make_shared<std::vector<Mat<CycF>>>();
    for (int g = 0; g < 4; ++g) {
        MatON A(nc, nc, fon.zero());
        Mat<CycF> Ac(nc, nc, fc.zero());
        for (int j = 0; j < nc; ++j) {
            Mat22 prod = D.G.mul(D.G.gens[g], D.elems[D.borel.reps[j]]);
            int k = D.borel.elem_index(prod);
            int j2 = D.borel.coset_of[k];
            auto [la, ld] = D.borel_spart_dlogs[D.borel.spart_of[k]];
            long long ee = ((c1 * la + c2 * ld) % m + m) % m;
            A.at(j2, j) = W.pow(t0, ee);
            Ac.at(j2, j) = C.zeta_pow((p + 1) * ee);
        }
        T.lat.act.push_back(std::move(A));
        acts->push_back(std::move(Ac));
    }
    T.cyc = acts;
    return T;
}

TameType scalar_type(int p, long long c, int N) {
    const WittRing& W = WittRing::get(p, 2, N);
    const CycloField& C = CycloField::get(p * p - 1);
    const GL2Setup& s = GL2Setup::get(p, 1);
    const FqField& F1 = FqField::get(p, 1);
    long long m = p - 1;
    c = ((c % m) + m) % m;
    TameType T;
    T.kind = TameKind::Scalar;
    T.p = p;
    T.e1 = c;
    T.dim = 1;
    T.C = &C;
    ONF fon{&W};
    T.lat.tag = s.tag;
    T.lat.f = fon;
    T.lat.dim = 1;
    ONElem t0 = W.teich(W.k->from_int(F1.gen()));
    CycF fc{&C};
    auto acts = std::make_shared<std::vector<Mat<CycF>>>();
    for (const auto& g : s.grp.gens) {
        long long det = ((g.a[0] * g.a[3] - g.a[1] * g.a[2]) % p + p) % p;
        long long dl = F1.dlog(F1.from_int(det));
        MatON A(1, 1, fon.zero());
        A.at(0, 0) = W.pow(t0, (c * dl) % m);
        T.lat.act.push_back(A);
        Mat<CycF> Ac(1, 1, fc.zero());
        Ac.at(0, 0) = C.zeta_pow((p + 1) * ((c * dl) % m));
        acts->push_back(Ac);
    }
    T.cyc = acts;
    return T;
}

TameType steinberg(int p, long long c, int N) {
    // kernel of I(chi, chi) -> chi(det), saturated over O_N
    TameType I = principal_series(p, c, c, N);
    const WittRing& W = *I.lat.f.R;
    ONF fon = I.lat.f;
    const GammaData& D = GammaData::get(p);
    const FqField& F1 = FqField::get(p, 1);
    long long m = p - 1;
    c = ((c % m) + m) % m;
    ONElem t0 = W.teich(W.k->from_int(F1.gen()));
    int nc = I.dim;
    MatON phi(1, nc, fon.zero());
    for (int j = 0; j < nc; ++j) {
        const Mat22& rep = D.elems[D.borel.reps[j]];
        long long det = ((rep.a[0] * rep.a[3] - rep.a[1] * rep.a[2]) % p + p) % p;
        phi.at(0, j) = W.pow(t0, (c * F1.dlog(F1.from_int(det))) % m);
    }
    // saturated kernel of phi
    SmithON S = smith_on(fon, phi);
    MatON K(nc, nc - 1, fon.zero());
    for (int j = 0; j < nc - 1; ++j)
        for (int i = 0; i < nc; ++i) K.at(i, j) = S.Q.at(i, j + 1);
    TameType T;
    T.kind = TameKind::Steinberg;
    T.p = p;
    T.e1 = c;
    T.dim = p;
    T.C = I.C;
    T.lat.tag = I.lat.tag;
    T.lat.f = fon;
    T.lat.dim = p;
    for (const auto& A : I.lat.act) T.lat.act.push_back(on_solve(fon, K, mat_mul(fon, A, K)));
    return T;
}

int cyc_hom_rank(const TameType& A, const TameType& B) {
    if (A.C != B.C || !A.cyc || !B.cyc) throw std::runtime_error("cyc_hom_rank: missing data");
    const CycloField& C = *A.C;
    CycF f{&C};
    int nm = B.dim * A.dim;
    Mat<CycF> sys(4 * nm, nm, f.zero());
    int rows = 0;
    for (int g = 0; g < 4; ++g) {
        const Mat<CycF>& AM = (*A.cyc)[g];
        const Mat<CycF>& BM = (*B.cyc)[g];
        for (int i = 0; i < B.dim; ++i)
            for (int j = 0; j < A.dim; ++j) {
                int r = rows + i * A.dim + j;
                for (int k = 0; k < B.dim; ++k)
                    if (!f.is_zero(BM.at(i, k)))
                        sys.at(r, k * A.dim + j) = f.add(sys.at(r, k * A.dim + j), BM.at(i, k));
                for (int k = 0; k < A.dim; ++k)
                    if (!f.is_zero(AM.at(k, j)))
                        sys.at(r, i * A.dim + k) = f.sub(sys.at(r, i * A.dim + k), AM.at(k, j));
            }
        rows += nm;
    }
    return nm - mat_rank(f, sys);
}

int cyc_sym1_selfhom_rank(const TameType& T) {
    if (!T.cyc) throw std::runtime_error("cyc_sym1_selfhom_rank: missing char-0 data");
    const CycloField& C = *T.C;
    CycF f{&C};
    const GL2Setup& s = GL2Setup::get(T.p, 1);
    // Sym^1: the generator matrix itself in the (X, Y) column convention
    std::vector<Mat<CycF>> acts;
    for (int g = 0; g < 4; ++g) {
        const Mat22& gm = s.grp.gens[g];
        Mat<CycF> S(2, 2, f.zero());
        S.at(0, 0) = C.from_int(gm.a[0]);
        S.at(0, 1) = C.from_int(gm.a[1]);
        S.at(1, 0) = C.from_int(gm.a[2]);
        S.at(1, 1) = C.from_int(gm.a[3]);
        // tensor with T
        const Mat<CycF>& TM = (*T.cyc)[g];
        int d = 2 * T.dim;
        Mat<CycF> A(d, d, f.zero());
        for (int i1 = 0; i1 < 2; ++i1)
            for (int j1 = 0; j1 < 2; ++j1) {
                if (f.is_zero(S.at(i1, j1))) continue;
                for (int i2 = 0; i2 < T.dim; ++i2)
                    for (int j2 = 0; j2 < T.dim; ++j2)
                        A.at(i1 * T.dim + i2, j1 * T.dim + j2) =
                            f.mul(S.at(i1, j1), TM.at(i2, j2));
            }
        acts.push_back(std::move(A));
    }
    int d = 2 * T.dim;
    int nm = d * d;
    Mat<CycF> sys(4 * nm, nm, f.zero());
    int rows = 0;
    for (int g = 0; g < 4; ++g) {
        const Mat<CycF>& M = acts[g];
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                int r = rows + i * d + j;
                for (int k = 0; k < d; ++k) {
                    if (!f.is_zero(M.at(i, k)))
                        sys.at(r, k * d + j) = f.add(sys.at(r, k * d + j), M.at(i, k));
                    if (!f.is_zero(M.at(k, j)))
                        sys.at(r, i * d + k) = f.sub(sys.at(r, i * d + k), M.at(k, j));
                }
            }
        rows += nm;
    }
    return nm - mat_rank(f, sys);
}

// ---------------------------------------------------------------------------
// injective envelopes
// ---------------------------------------------------------------------------

GMod inj_envelope(const GL2Setup& s, const FqField& F, int m, int n) {
    int p = s.grp.p;
    if (m == p - 1) return serre_weight_module(s, F, m, n);
    const GammaData& D = GammaData::get(p);
    FqF f{&F};
    const FqField& F1 = FqField::get(p, 1);

    // V = Ind_H^Gamma chi_{m,n}, an injective module of dimension |Gamma/H|
    static std::map<int, CosetTable*> hcache;
    static std::mutex mx;
    CosetTable* HT;
    {
        std::lock_guard<std::mutex> lk(mx);
        auto it = hcache.find(p);
        if (it == hcache.end()) {
            auto* t = new CosetTable;
            t->build(D.G, D.G.subgroups.at("H"));
            it = hcache.emplace(p, t).first;
        }
        HT = it->second;
    }
    int nc = HT->ncosets;
    GMod V;
    V.tag = s.tag;
    V.f = f;
    V.dim = nc;
    for (const auto& gen : s.grp.gens) {
        Mat<FqF> A(nc, nc, f.zero());
        for (int j = 0; j < nc; ++j) {
            Mat22 prod = D.G.mul(gen, D.elems[HT->reps[j]]);
            int k = HT->elem_index(prod);
            int j2 = HT->coset_of[k];
            const Mat22& h = HT->sub[HT->spart_of[k]];
            // chi_{m,n}(diag(a,d)) = a^{m+n} d^n
            long long la = F1.dlog(F1.from_int(h.a[0])), ld = F1.dlog(F1.from_int(h.a[3]));
            long long g0 = F1.gen();
            FqF::Elem val = F.pow(F.from_int(g0), ((la * (m + n) + ld * n) % (p - 1) + (p - 1)) % (p - 1));
            A.at(j2, j) = val;
        }
        V.act.push_back(std::move(A));
    }

    IrrList irr = serre_irr_list(s, F);
    GMod sigma = serre_weight_module(s, F, m, n);
    auto embeds = hom_space(sigma, V);
    if (embeds.size() != 1) throw std::runtime_error("inj_envelope: socle multiplicity not one");
    ColSpan<FqF> H(f, nc);
    H.add_matrix_columns(embeds[0]);
    IrrLabel target = IrrLabel::serre(m, n, p);

    auto socle_is_sigma = [&](const Mat<FqF>& basis) {
        GMod sub = sub_module(V, basis);
        SocleResult sr = socle(sub, irr);
        JHMultiset want;
        want[target] = 1;
        return sr.mult == want;
    };

    bool grew = true;
    while (grew) {
        grew = false;
        Mat<FqF> Hb = H.to_matrix();
        Mat<FqF> proj, lift;
        GMod Q = quotient_module(V, Hb, &proj, &lift);
        if (Q.dim == 0) break;
        for (const auto& [label, irrmod] : irr) {
            auto maps = hom_space(irrmod, Q);
            if (maps.empty()) continue;
            if (maps.size() > 3) throw std::runtime_error("inj_envelope: hom dim too large");
            std::vector<Mat<FqF>> lines;
            if (maps.size() == 1) {
                lines.push_back(maps[0]);
            } else {
                // all lines in the hom space (q small)
                int q = F.q;
                // representatives: last nonzero coordinate = 1
                for (size_t lead = 0; lead < maps.size(); ++lead) {
                    std::vector<int> idx(lead, 0);
                    // enumerate coefficients for positions < lead
                    std::vector<int> cnt(lead, 0);
                    bool done = false;
                    while (!done) {
                        Mat<FqF> mm = maps[lead];
                        for (size_t t = 0; t < lead; ++t)
                            if (cnt[t])
                                mm = mat_add(f, mm, mat_scale(f, maps[t], (FqF::Elem)cnt[t]));
                        lines.push_back(mm);
                        size_t t = 0;
                        while (t < lead && ++cnt[t] == q) cnt[t++] = 0;
                        if (t == lead) done = true;
                        if (lead == 0) done = true;
                    }
                }
            }
            for (const auto& phi : lines) {
                Mat<FqF> img = mat_mul(f, lift, phi);
                ColSpan<FqF> cand = H;
                cand.add_matrix_columns(img);
                if (cand.dim() != H.dim() + irrmod.dim) continue;
                if (socle_is_sigma(cand.to_matrix())) {
                    H = cand;
                    grew = true;
                    break;
                }
            }
            if (grew) break;
        }
    }
    return sub_module(V, H.to_matrix());
}

// ---------------------------------------------------------------------------
// level twists
// ---------------------------------------------------------------------------

GModON inflate_to_level(const GL2Setup& level_setup, const GModON& gamma_mod) {
    GModON R;
    R.tag = level_setup.tag;
    R.f = gamma_mod.f;
    R.dim = gamma_mod.dim;
    // gens: u d1 d2 w (from Gamma) then K1 trivially
    for (int g = 0; g < 4; ++g) R.act.push_back(gamma_mod.act[g]);
    for (int g = 4; g < (int)level_setup.grp.gens.size(); ++g)
        R.act.push_back(mat_id(R.f, R.dim));
    return R;
}

GModON sym1_twist(const GL2Setup& level_setup, const GModON& gamma_mod) {
    const WittRing& W = *gamma_mod.f.R;
    ONF f = gamma_mod.f;
    GModON sym1;
    sym1.tag = level_setup.tag;
    sym1.f = f;
    sym1.dim = 2;
    for (const auto& g : level_setup.grp.gens) {
        MatON A(2, 2, f.zero());
        A.at(0, 0) = W.from_int(g.a[0]);
        A.at(0, 1) = W.from_int(g.a[1]);
        A.at(1, 0) = W.from_int(g.a[2]);
        A.at(1, 1) = W.from_int(g.a[3]);
        sym1.act.push_back(std::move(A));
    }
    return tensor_on(sym1, inflate_to_level(level_setup, gamma_mod));
}

// ---------------------------------------------------------------------------
// U-invariant proposition
// ---------------------------------------------------------------------------

namespace {

UInvReport u_report_impl(const GMod& W, bool invariant_side) {
    UInvReport rep;
    int p = W.tag->p;
    if (W.dim < 2) return rep;  // inapplicable
    Mat<FqF> line;
    std::map<HChar, int> chi_on;
    if (invariant_side) {
        line = invariants(W, "U");
        if (line.c != 1) return rep;
        chi_on = h_eigenchars_on(W, line);
    } else {
        Mat<FqF> spanW = augmentation_span(W, "U");
        if (W.dim - spanW.c != 1) return rep;
        chi_on = h_eigenchars_coinv(W, "U");
    }
    rep.applicable = true;
    rep.chi = chi_on.begin()->first;
    HChar chi10 = HChar::chi(p, 1, 0);
    rep.expected[rep.chi.times(chi10)] += 1;
    rep.expected[rep.chi.times(chi10.s())] += 1;

    const GL2Setup& s1 = GL2Setup::get(p, 1);
    GMod sym1 = serre_weight_module(s1, *W.f.F, 1, 0);
    if (W.tag->gen_names.size() != sym1.act.size())
        throw std::runtime_error("verify_u: expects a Gamma-tag module");
    sym1.tag = W.tag;
    GMod T = tensor(sym1, W);
    if (invariant_side) {
        Mat<FqF> inv = invariants(T, "U");
        rep.computed = h_eigenchars_on(T, inv);
    } else {
        rep.computed = h_eigenchars_coinv(T, "U");
    }
    rep.match = (rep.computed == rep.expected);
    return rep;
}

}  // namespace

UInvReport verify_u_invariants(const GMod& W) { return u_report_impl(W, true); }
UInvReport verify_u_coinvariants(const GMod& W) { return u_report_impl(W, false); }

}  // namespace tamelat

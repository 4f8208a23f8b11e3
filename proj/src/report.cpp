#include "tamelat/report.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "tamelat/graded.hpp"
#include "tamelat/quatrep.hpp"
#include "tamelat/weights.hpp"

namespace tamelat {

bool SuiteResult::all_pass() const {
    for (const auto& c : checks)
        if (c.status == CheckReport::Fail) return false;
    return true;
}

std::vector<std::string> suite_names() {
    return {"diamond", "section3",       "section34-glue", "quaternion-lie", "wchi3",
            "ext1",    "weights-tables", "theta-chain",    "pbw",            "gk"};
}

// ---------------------------------------------------------------------------
// expected-value table
// ---------------------------------------------------------------------------

const ExpectedTable& ExpectedTable::get() {
    static ExpectedTable t;
    return t;
}

ExpectedTable::ExpectedTable() {
    const char* env = std::getenv("TAMELAT_DATA");
    std::string dir = env ? env : TAMELAT_DATA_DIR;
    std::ifstream in(dir + "/section3_expected.txt");
    if (!in) throw std::runtime_error("ExpectedTable: cannot open section3_expected.txt");
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto sp = line.find(' ');
        if (sp == std::string::npos) continue;
        rows_[line.substr(0, sp)] = line.substr(sp + 1);
    }
}

std::string ExpectedTable::lookup(const std::string& id) const {
    auto it = rows_.find(id);
    return it == rows_.end() ? std::string() : it->second;
}

// ---------------------------------------------------------------------------
// helpers
// ---------------------------------------------------------------------------

namespace {

using Clock = std::chrono::steady_clock;

struct Checker {
    std::vector<CheckReport>* out;
    std::string params;
    void add(const std::string& id, bool pass, const std::string& expected,
             const std::string& computed, double ms = 0) {
        CheckReport r;
        r.id = id;
        r.params = params;
        r.status = pass ? CheckReport::Pass : CheckReport::Fail;
        r.expected = expected;
        r.computed = computed;
        r.wall_ms = ms;
        out->push_back(std::move(r));
    }
    void run(const std::string& id, const std::function<void(CheckReport&)>& fn) {
        CheckReport r;
        r.id = id;
        r.params = params;
        auto t0 = Clock::now();
        try {
            fn(r);
        } catch (const std::exception& e) {
            r.status = CheckReport::Fail;
            r.computed = std::string("exception: ") + e.what();
            if (r.expected.empty()) r.expected = "(no exception)";
        }
        r.wall_ms =
            std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0).count() /
            1000.0;
        out->push_back(std::move(r));
    }
};

// serre weight with the sigma_{-1,*} = 0 convention
bool valid_w(int m) { return m >= 0; }

JHMultiset mk_jh(int p, std::initializer_list<std::pair<int, int>> ws) {
    JHMultiset out;
    for (auto [m, n] : ws)
        if (valid_w(m)) out[IrrLabel::serre(m, n, p)] += 1;
    return out;
}

std::vector<JHMultiset> mk_layers(int p, std::vector<std::vector<std::pair<int, int>>> ls) {
    std::vector<JHMultiset> out;
    for (auto& l : ls) {
        JHMultiset m;
        for (auto [a, b] : l)
            if (valid_w(a)) m[IrrLabel::serre(a, b, p)] += 1;
        if (!m.empty()) out.push_back(m);
    }
    return out;
}

Mat<FqF> cosocle_proj(const GMod& M, const IrrLabel& label, const IrrList& irr) {
    const GMod* tgt = nullptr;
    for (const auto& [l, mod] : irr)
        if (l == label) tgt = &mod;
    if (!tgt) throw std::runtime_error("cosocle_proj: label not in list");
    auto maps = hom_space(M, *tgt);
    if (maps.empty()) throw std::runtime_error("cosocle_proj: label not a quotient");
    const FqF& f = M.f;
    Mat<FqF> proj((int)maps.size() * tgt->dim, M.dim, f.zero());
    int r0 = 0;
    for (const auto& m : maps) {
        for (int i = 0; i < m.r; ++i)
            for (int j = 0; j < m.c; ++j) proj.at(r0 + i, j) = m.at(i, j);
        r0 += m.r;
    }
    return proj;
}

/// kron(I_2, B): basis of Sym^1 O^2 tensor L inside Sym^1 tensor ambient.
MatON sym1_tensor_basis(const ONF& f, const MatON& B) {
    MatON out(2 * B.r, 2 * B.c, f.zero());
    for (int blk = 0; blk < 2; ++blk)
        for (int i = 0; i < B.r; ++i)
            for (int j = 0; j < B.c; ++j) out.at(blk * B.r + i, blk * B.c + j) = B.at(i, j);
    return out;
}

bool lattice_contains(const LatticeON& A, const LatticeON& B) {
    try {
        on_solve(A.ambient->f, A.basis, B.basis, true);
        return true;
    } catch (const std::runtime_error&) {
        return false;
    }
}

bool lattice_equal(const LatticeON& A, const LatticeON& B) {
    return lattice_contains(A, B) && lattice_contains(B, A);
}

std::string hchars_str(const std::map<HChar, int>& m) {
    std::string s = "{";
    bool first = true;
    for (const auto& [c, k] : m) {
        if (!first) s += ", ";
        first = false;
        s += c.str();
        if (k != 1) s += "*" + std::to_string(k);
    }
    return s + "}";
}

std::map<HChar, int> mk_hchars(int p, std::initializer_list<std::pair<long long, long long>> cs) {
    std::map<HChar, int> out;
    for (auto [m, n] : cs) out[HChar::chi(p, m, n)] += 1;
    return out;
}

// r_R for a glued lattice: project to the first-block coordinates of L1 and
// reduce mod p (the composite R ->> R/pR ->> L1/pL1).
Mat<FqF> glue_first_block_proj(const LatticeON& R, const LatticeON& L1) {
    const ONF& f = R.ambient->f;
    int n1 = L1.ambient->dim;
    MatON top(n1, R.basis.c, f.zero());
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < R.basis.c; ++j) top.at(i, j) = R.basis.at(i, j);
    MatON inL1 = on_solve(f, L1.basis, top, true);
    return on_reduce(f, inL1);
}

std::string layers_to_string(const std::vector<JHMultiset>& layers) {
    return filtration_str(layers);
}

}  // namespace

// ---------------------------------------------------------------------------
// suites
// ---------------------------------------------------------------------------

namespace {

void suite_diamond(const SuiteParams& sp, std::vector<CheckReport>& out) {
    int p = sp.p, N = sp.precision;
    const GL2Setup& s1 = GL2Setup::get(p, 1);
    const FqField& F = FqField::get(p, 2);
    IrrList irr = serre_irr_list(s1, F);
    for (int a = 0; a <= p - 1; ++a)
        for (int b = 0; b <= p - 2; ++b) {
            Checker ck{&out, "p=" + std::to_string(p) + " a=" + std::to_string(a) +
                                 " b=" + std::to_string(b)};
            ck.run("prop-diamond-i/p=" + std::to_string(p) + "/a=" + std::to_string(a) +
                       "/b=" + std::to_string(b),
                   [&](CheckReport& r) {
                       TameType I = principal_series(p, b, b + a, N);
                       JHMultiset jh = jh_multiset(reduce_mod_p(I.lat), irr);
                       JHMultiset want = mk_jh(p, {{a, b}, {p - 1 - a, a + b}});
                       r.expected = jh_str(want);
                       r.computed = jh_str(jh);
                       r.status = (jh == want) ? CheckReport::Pass : CheckReport::Fail;
                   });
            ck.run("prop-diamond-ii/p=" + std::to_string(p) + "/a=" + std::to_string(a) +
                       "/b=" + std::to_string(b),
                   [&](CheckReport& r) {
                       const TameType& T = theta(p, a + 1 + (p + 1) * b, N);
                       JHMultiset jh = jh_multiset(reduce_mod_p(T.lat), irr);
                       JHMultiset want = mk_jh(p, {{a - 1, b + 1}, {p - 2 - a, a + b + 1}});
                       r.expected = jh_str(want);
                       r.computed = jh_str(jh);
                       bool multfree = true;
                       for (const auto& [l, c] : jh)
                           if (c > 1) multfree = false;
                       r.status =
                           (jh == want && multfree) ? CheckReport::Pass : CheckReport::Fail;
                   });
        }
}

void sec3_layers_check(Checker& ck, const std::string& id, const std::vector<JHMultiset>& got,
                       const std::vector<JHMultiset>& want) {
    // the versioned data file is authoritative when it carries a row for
    // this instance; the inline closed form must agree with it
    std::string want_str = layers_to_string(want);
    std::string table = ExpectedTable::get().lookup(id);
    bool consistent = table.empty() || table == want_str;
    std::string expected = table.empty() ? want_str : table;
    ck.add(id, got == want && consistent, expected, layers_to_string(got));
}

void suite_section3(const SuiteParams& sp, std::vector<CheckReport>& out) {
    int p = sp.p, N = sp.precision;
    const GL2Setup& s1 = GL2Setup::get(p, 1);
    const GL2Setup& s6 = GL2Setup::get(p, N);
    const FqField& F = FqField::get(p, 2);
    IrrList irr1 = serre_irr_list(s1, F);
    IrrList irr6 = serre_irr_list(s6, F);
    FqF kf{&F};

    std::vector<long long> bs = {0, 1};
    for (long long b : bs) {
        for (int a = 1; a <= p - 2; ++a) {
            std::string tag = "/p=" + std::to_string(p) + "/a=" + std::to_string(a) +
                              "/b=" + std::to_string(b);
            Checker ck{&out, "p=" + std::to_string(p) + " a=" + std::to_string(a) +
                                 " b=" + std::to_string(b)};
            const TameType& TT = theta(p, a + 1 + (p + 1) * b, N);
            auto ambG = std::make_shared<GModON>(TT.lat);

            // T and T' with prescribed cosocles
            LatticeON T = lattice_with_cosocle(ambG, IrrLabel::serre(a - 1, b + 1, p), irr1);
            GMod Tbar = lattice_mod_p(T);
            sec3_layers_check(ck, "eq-T/pT" + tag, socle_layers(Tbar, irr1),
                              mk_layers(p, {{{p - 2 - a, a + b + 1}}, {{a - 1, b + 1}}}));
            {
                auto inv = h_eigenchars_on(Tbar, invariants(Tbar, "I1"));
                auto want = mk_hchars(p, {{p - 2 - a, a + b + 1}});
                ck.add("lem-I1-inv-T" + tag, inv == want, hchars_str(want), hchars_str(inv));
                auto coinv = h_eigenchars_coinv(Tbar, "I1");
                auto wantc = mk_hchars(p, {{b + 1 + (a - 1), a - 1 >= 0 ? (long long)(b + 1) : 0}});
                // chi^s_{a-1,b+1}: swap of chi_{a-1,b+1}
                wantc.clear();
                wantc[HChar::chi(p, a - 1, b + 1).s()] = 1;
                ck.add("lem-I1-coinv-T" + tag, coinv == wantc, hchars_str(wantc),
                       hchars_str(coinv));
            }
            LatticeON Tp = sublattice_kernel(T, cosocle_proj(Tbar, IrrLabel::serre(a - 1, b + 1, p), irr1));
            GMod Tpbar = lattice_mod_p(Tp);
            sec3_layers_check(ck, "eq-T'/pT'" + tag, socle_layers(Tpbar, irr1),
                              mk_layers(p, {{{a - 1, b + 1}}, {{p - 2 - a, a + b + 1}}}));

            // L = Sym^1 O^2 tensor T at full level, and L'
            auto ambL = std::make_shared<GModON>(sym1_twist(s6, *ambG));
            LatticeON L;
            L.ambient = ambL;
            L.basis = sym1_tensor_basis(ambL->f, T.basis);
            L.prec = T.prec;
            LatticeON Lp;
            Lp.ambient = ambL;
            Lp.basis = sym1_tensor_basis(ambL->f, Tp.basis);
            Lp.prec = Tp.prec;

            GMod Lbar = lattice_mod_p(L);
            GMod Lpbar = lattice_mod_p(Lp);
            ck.add("lem-K1-trivial" + tag,
                   generators_act_trivially(Lbar, "K1") && generators_act_trivially(Lpbar, "K1"),
                   "K1 acts trivially on L/pL and L'/pL'", "checked");

            // (a) two-step socle and cosocle filtrations
            auto socL = mk_layers(p, {{{p - 3 - a, a + b + 2}, {p - 1 - a, a + b + 1}},
                                      {{a, b + 1}, {a - 2, b + 2}}});
            auto cosL = mk_layers(p, {{{a, b + 1}, {a - 2, b + 2}},
                                      {{p - 3 - a, a + b + 2}, {p - 1 - a, a + b + 1}}});
            sec3_layers_check(ck, "prop-reduction-L-socle" + tag, socle_layers(Lbar, irr6), socL);
            {
                auto rl = radical_layers(Lbar, irr6);
                sec3_layers_check(ck, "prop-reduction-L-cosocle" + tag, rl, cosL);
            }
            sec3_layers_check(ck, "prop-reduction-L'-socle" + tag, socle_layers(Lpbar, irr6),
                              mk_layers(p, {{{a, b + 1}, {a - 2, b + 2}},
                                            {{p - 3 - a, a + b + 2}, {p - 1 - a, a + b + 1}}}));
            {
                auto inv = h_eigenchars_on(Lbar, invariants(Lbar, "I1"));
                auto want = mk_hchars(p, {{p - 1 - a, a + b + 1}, {p - 3 - a, a + b + 2}});
                ck.add("lem-L-I1-inv" + tag, inv == want, hchars_str(want), hchars_str(inv));
                auto invp = h_eigenchars_on(Lpbar, invariants(Lpbar, "I1"));
                auto wantp = mk_hchars(p, {{a, b + 1}, {a - 2, b + 2}});
                ck.add("lem-L'-I1-inv" + tag, invp == wantp, hchars_str(wantp), hchars_str(invp));
            }

            // (b) nonsplit extension occurrences with the a in {1, p-2} exceptions
            auto ext_check = [&](const std::string& id, const GMod& M, int bm, long long bn,
                                 int tm, long long tn) {
                bool want = valid_w(bm) && valid_w(tm);
                bool got = false;
                if (want)
                    got = nonsplit_ext_occurs(M, IrrLabel::serre(bm, bn, p),
                                              IrrLabel::serre(tm, tn, p), irr6);
                ck.add(id, got == want, want ? "occurs" : "absent",
                       got ? "occurs" : "absent");
            };
            ext_check("prop-reduction-L-E1" + tag, Lbar, p - 3 - a, a + b + 2, a, b + 1);
            ext_check("prop-reduction-L-E2" + tag, Lbar, p - 1 - a, a + b + 1, a - 2, b + 2);
            ext_check("prop-reduction-L-E3" + tag, Lbar, p - 1 - a, a + b + 1, a, b + 1);
            ext_check("prop-reduction-L'-E1" + tag, Lpbar, a, b + 1, p - 3 - a, a + b + 2);
            ext_check("prop-reduction-L'-E2" + tag, Lpbar, a - 2, b + 2, p - 1 - a, a + b + 1);
            ext_check("prop-reduction-L'-E3" + tag, Lpbar, a, b + 1, p - 1 - a, a + b + 1);

            // (d) sublattices L1, L1', L2
            LatticeON L1 = (a >= 2)
                               ? sublattice_kernel(
                                     L, cosocle_proj(Lbar, IrrLabel::serre(a - 2, b + 2, p), irr6))
                               : L;
            GMod L1bar = lattice_mod_p(L1);
            sec3_layers_check(ck, "prop-sublattice-1-cosocle" + tag, radical_layers(L1bar, irr6),
                              mk_layers(p, {{{a, b + 1}},
                                            {{p - 1 - a, a + b + 1}, {p - 3 - a, a + b + 2}},
                                            {{a - 2, b + 2}}}));
            sec3_layers_check(ck, "prop-sublattice-1-K1coinv" + tag,
                              radical_layers(k1_coinvariants(L1bar), irr6),
                              mk_layers(p, {{{a, b + 1}},
                                            {{p - 1 - a, a + b + 1}, {p - 3 - a, a + b + 2}}}));
            {
                LatticeON L1u = lattice_with_cosocle(ambL, IrrLabel::serre(a, b + 1, p), irr6);
                ck.add("prop-sublattice-1-unique" + tag, lattices_isomorphic(L1, L1u),
                       "kernel construction matches the cosocle-normalized lattice", "checked");
            }

            LatticeON L1p =
                (a <= p - 3)
                    ? sublattice_kernel(
                          Lp, cosocle_proj(Lpbar, IrrLabel::serre(p - 3 - a, a + b + 2, p), irr6))
                    : Lp;
            GMod L1pbar = lattice_mod_p(L1p);
            sec3_layers_check(ck, "prop-sublattice-3-cosocle" + tag, radical_layers(L1pbar, irr6),
                              mk_layers(p, {{{p - 1 - a, a + b + 1}},
                                            {{a - 2, b + 2}, {a, b + 1}},
                                            {{p - 3 - a, a + b + 2}}}));
            sec3_layers_check(ck, "prop-sublattice-3-K1coinv" + tag,
                              radical_layers(k1_coinvariants(L1pbar), irr6),
                              mk_layers(p, {{{p - 1 - a, a + b + 1}},
                                            {{a - 2, b + 2}, {a, b + 1}}}));
            {
                LatticeON L1pu =
                    lattice_with_cosocle(ambL, IrrLabel::serre(p - 1 - a, a + b + 1, p), irr6);
                ck.add("prop-sublattice-3-unique" + tag, lattices_isomorphic(L1p, L1pu),
                       "kernel construction matches the cosocle-normalized lattice", "checked");
            }

            if (a >= 2) {
                LatticeON L2 = lattice_with_cosocle(ambL, IrrLabel::serre(a - 2, b + 2, p), irr6);
                GMod L2bar = lattice_mod_p(L2);
                sec3_layers_check(ck, "prop-sublattice-2-cosocle" + tag,
                                  radical_layers(L2bar, irr6),
                                  mk_layers(p, {{{a - 2, b + 2}},
                                                {{p - 1 - a, a + b + 1}},
                                                {{a, b + 1}},
                                                {{p - 3 - a, a + b + 2}}}));
                sec3_layers_check(ck, "prop-sublattice-2-K1coinv" + tag,
                                  radical_layers(k1_coinvariants(L2bar), irr6),
                                  mk_layers(p, {{{a - 2, b + 2}}, {{p - 1 - a, a + b + 1}}}));
                // exact sequence 0 -> pL -> L2 -> (sigma_{p-1-a} -- sigma_{a-2}) -> 0
                {
                    GModON ML2 = lattice_module(L2);
                    MatON pLin = on_solve(ambL->f, L2.basis, scale_p(L, 1).basis, true);
                    Mat<FqF> sub = on_reduce(ambL->f, pLin);
                    GMod qt = quotient_module(reduce_mod_p(ML2), sub);
                    sec3_layers_check(ck, "eq-L2-ses" + tag, radical_layers(qt, irr6),
                                      mk_layers(p, {{{a - 2, b + 2}}, {{p - 1 - a, a + b + 1}}}));
                }
                ck.add("prop-K1-generation-L2" + tag, k1_generation_check(L, L2),
                       "pL inside (K1-1)L2", "checked");
            }
            if (a >= 2)
                ck.add("prop-K1-generation-L1" + tag, k1_generation_check(L, L1),
                       "pL inside (K1-1)L1", "checked");
            ck.add("prop-K1-generation-central" + tag, k1_generation_check(L, L),
                   "pL inside (K1-1)L via the central element 1+p", "checked");
        }

        // (c) a in {0, p-1}
        for (int a : {0, p - 1}) {
            std::string tag = "/p=" + std::to_string(p) + "/a=" + std::to_string(a) +
                              "/b=" + std::to_string(b);
            Checker ck{&out, "p=" + std::to_string(p) + " a=" + std::to_string(a) +
                                 " b=" + std::to_string(b)};
            const TameType& TT = theta(p, a + 1 + (p + 1) * b, N);
            auto ambG = std::make_shared<GModON>(TT.lat);
            {
                JHMultiset jh = jh_multiset(lattice_mod_p(standard_lattice(ambG)), irr1);
                JHMultiset want = mk_jh(p, {{p - 2, b + 1}});
                ck.add("prop-diamond-ii-irred" + tag, jh == want, jh_str(want), jh_str(jh));
            }
            auto ambL = std::make_shared<GModON>(sym1_twist(s6, *ambG));
            LatticeON L = standard_lattice(ambL);
            GMod Lbar = lattice_mod_p(L);
            {
                auto sl = socle_layers(Lbar, irr6);
                auto want = mk_layers(p, {{{p - 1, b + 1}, {p - 3, b + 2}}});
                sec3_layers_check(ck, "prop-reduction-L2-split" + tag, sl, want);
            }
            LatticeON Lp =
                sublattice_kernel(L, cosocle_proj(Lbar, IrrLabel::serre(p - 1, b + 1, p), irr6));
            GMod Lpbar = lattice_mod_p(Lp);
            sec3_layers_check(ck, "prop-reduction-L2-nonsplit" + tag, socle_layers(Lpbar, irr6),
                              mk_layers(p, {{{p - 1, b + 1}}, {{p - 3, b + 2}}}));
            {
                JHMultiset co = jh_multiset(k1_coinvariants(Lpbar), irr6);
                JHMultiset want = mk_jh(p, {{p - 3, b + 2}});
                ck.add("prop-reduction-L2-K1coinv" + tag, co == want, jh_str(want), jh_str(co));
            }
            ck.run("prop-reduction-L2-pL" + tag, [&](CheckReport& r) {
                LatticeON pL = sublattice_kernel(
                    Lp, cosocle_proj(Lpbar, IrrLabel::serre(p - 3, b + 2, p), irr6), false);
                r.expected = "ker(L' ->> sigma_{p-3,b+2}) = pL";
                bool ok = lattice_equal(pL, scale_p(L, 1));
                r.computed = ok ? "equal" : "different";
                r.status = ok ? CheckReport::Pass : CheckReport::Fail;
            });
        }
    }
    (void)kf;
}

void suite_section34(const SuiteParams& sp, std::vector<CheckReport>& out) {
    int p = sp.p, N = sp.precision;
    const GL2Setup& s6 = GL2Setup::get(p, N);
    const FqField& F = FqField::get(p, 2);
    IrrList irr6 = serre_irr_list(s6, F);

    std::vector<long long> bs = {0, 1};
    for (long long b : bs)
        for (int a = 1; a <= p - 3; ++a) {
            bool regimeA = (a <= p - 4);
            std::string tag = "/p=" + std::to_string(p) + "/a=" + std::to_string(a) +
                              "/b=" + std::to_string(b);
            Checker ck{&out, "p=" + std::to_string(p) + " a=" + std::to_string(a) +
                                 " b=" + std::to_string(b)};
            auto psis = psi_triple(p, a, b);
            IrrLabel sigw = IrrLabel::serre(a, b + 1, p);

            auto amb1 = std::make_shared<GModON>(inflate_to_level(s6, theta(p, psis[0], N).lat));
            auto amb2 = std::make_shared<GModON>(sym1_twist(s6, theta(p, psis[1], N).lat));
            auto amb3 = std::make_shared<GModON>(sym1_twist(s6, theta(p, psis[2], N).lat));

            LatticeON R1 = lattice_with_cosocle(amb1, sigw, irr6);
            GMod W = lattice_mod_p(R1);
            sec3_layers_check(ck, "glue-R1" + tag, radical_layers(W, irr6),
                              mk_layers(p, {{{a, b + 1}}, {{p - 3 - a, a + b + 2}}}));

            LatticeON R2 = lattice_with_cosocle(amb2, sigw, irr6);
            GMod R2bar = lattice_mod_p(R2);
            if (regimeA)
                sec3_layers_check(ck, "eq-R2/p" + tag, radical_layers(R2bar, irr6),
                                  mk_layers(p, {{{a, b + 1}},
                                                {{p - 3 - a, a + b + 2}},
                                                {{a + 2, b}},
                                                {{p - 5 - a, a + b + 3}}}));
            LatticeON R3 = lattice_with_cosocle(amb3, sigw, irr6);
            GMod R3bar = lattice_mod_p(R3);
            sec3_layers_check(ck, "eq-R3/p" + tag, radical_layers(R3bar, irr6),
                              mk_layers(p, {{{a, b + 1}},
                                            {{p - 1 - a, a + b + 1}, {p - 3 - a, a + b + 2}},
                                            {{a - 2, b + 2}}}));

            // r2, r3 and the kernels R2', R3'
            GlueSpec g1;
            LatticeON R;
            Mat<FqF> r2m, r3m;
            if (regimeA) {
                auto maps2 = hom_space(R2bar, W);
                if (maps2.empty()) {
                    ck.add("glue-r2" + tag, false, "surjection R2 ->> W", "no map");
                    continue;
                }
                r2m = maps2[0];
                g1.L1 = R1;
                g1.L2 = R2;
                g1.W = W;
                g1.r1 = mat_id(W.f, W.dim);
                g1.r2 = r2m;
                validate_glue_spec(g1, irr6);
                R = glue(g1);
            } else {
                // a = p-3: glue along sigma_{a,b+1} = sigma_{p-3,b+1}
                GMod sigmod = serre_weight_module(s6, F, a, (int)((b + 1) % (p - 1)));
                g1.L1 = R1;
                g1.L2 = R2;
                g1.W = sigmod;
                g1.r1 = cosocle_proj(W, sigw, irr6);
                g1.r2 = cosocle_proj(R2bar, sigw, irr6);
                validate_glue_spec(g1, irr6);
                R = glue(g1);
                // R2/pR2 is the two-step (sigma_{p-1,b} -- sigma_{p-3,b+1})
                sec3_layers_check(ck, "glue-R2-pminus3" + tag, radical_layers(R2bar, irr6),
                                  mk_layers(p, {{{p - 3, b + 1}}, {{p - 1, b}}}));
                // R2' = Ker(r2) has semisimple reduction
                LatticeON R2p = sublattice_kernel(R2, g1.r2);
                auto sl = socle_layers(lattice_mod_p(R2p), irr6);
                sec3_layers_check(ck, "glue-R2'-pminus3" + tag, sl,
                                  mk_layers(p, {{{p - 3, b + 1}, {p - 1, b}}}));
            }

            GMod Rbar = lattice_mod_p(R);
            {
                CosocleResult cs = cosocle(Rbar, irr6);
                JHMultiset want;
                want[sigw] = 1;
                ck.add("prop-R-cosoc" + tag, cs.mult == want, jh_str(want), jh_str(cs.mult));
            }
            Mat<FqF> rR = glue_first_block_proj(R, R1);
            {
                // gluing lemma (i): 0 -> Ker(r')/p -> R/pR -> R1/pR1 -> 0 with
                // r' the surjective leg
                GMod co = k1_coinvariants(Rbar);
                bool iso = (co.dim == W.dim) && is_isomorphic(co, W);
                ck.add("prop-R-K1coinv" + tag, iso, "(R/pR)_{K1} = W", iso ? "iso" : "not iso");
            }
            {
                // dimension-exact SES through the first block
                Mat<FqF> rW = regimeA ? rR : mat_mul(W.f, g1.r1, rR);
                Mat<FqF> K = kernel(W.f, rW);
                int expect = R.rank() - (regimeA ? W.dim : g1.W.dim);
                ck.add("lem-glue-ses1" + tag, K.c == expect,
                       "dim ker = " + std::to_string(expect), std::to_string(K.c));
            }

            // second glue along W via r_R (the composite to R1/pR1 = W)
            auto maps3 = hom_space(R3bar, W);
            if (maps3.empty()) {
                ck.add("glue-r3" + tag, false, "surjection R3 ->> W", "no map");
                continue;
            }
            r3m = maps3[0];
            GlueSpec g2;
            g2.L1 = R;
            g2.L2 = R3;
            g2.W = W;
            g2.r1 = rR;
            g2.r2 = r3m;
            validate_glue_spec(g2, irr6);
            LatticeON Rt = glue(g2);
            GMod Rtbar = lattice_mod_p(Rt);
            {
                CosocleResult cs = cosocle(Rtbar, irr6);
                JHMultiset want;
                want[sigw] = 1;
                ck.add("prop-tildeR-cosoc" + tag, cs.mult == want, jh_str(want), jh_str(cs.mult));
            }
            {
                Mat<FqF> m1 = augmentation_span(Rtbar, "K1");
                GMod sub1 = sub_module(Rtbar, m1);
                Mat<FqF> m2 = augmentation_span(sub1, "K1");
                ck.add("cor-wtR-mK1sq" + tag, m2.c == 0, "m_{K1}^2 kills tildeR/p",
                       m2.c == 0 ? "killed" : "not killed");
            }
            {
                // gluing lemma for the second glue: dim check and kernel shape
                Mat<FqF> pi3 = glue_first_block_proj(Rt, R);  // to the R-block
                // kernel of the projection to R3-block has dim = ker(r_R)/p
                const ONF& f = Rt.ambient->f;
                int n1 = R.ambient->dim;
                MatON bot(R3.ambient->dim, Rt.basis.c, f.zero());
                for (int i = 0; i < R3.ambient->dim; ++i)
                    for (int j = 0; j < Rt.basis.c; ++j)
                        bot.at(i, j) = Rt.basis.at(n1 + i, j);
                MatON inR3 = on_solve(f, R3.basis, bot, true);
                Mat<FqF> pr = on_reduce(f, inR3);
                Mat<FqF> K = kernel(W.f, pr);
                GMod kerbar = lattice_mod_p(sublattice_kernel(R, rR));
                bool dimok = (K.c == kerbar.dim);
                ck.add("lem-glue-ses2" + tag, dimok,
                       "dim ker(tildeR -> R3/p) = dim Ker(r_R)/p = " + std::to_string(kerbar.dim),
                       std::to_string(K.c));
            }
        }
}

void suite_quaternion_lie(const SuiteParams& sp, std::vector<CheckReport>& out) {
    int p = sp.p, n = sp.level;
    Checker ck{&out, "p=" + std::to_string(p) + " f=1 n=" + std::to_string(n)};

    ck.run("eq-2-2-relations/p=" + std::to_string(p), [&](CheckReport& r) {
        GammaRelationsReport rep = gamma_relations(p, n);
        r.expected = "gamma relations hold";
        std::string got;
        got += rep.gamma3_nonzero_deg2 ? "" : " gamma3=0;";
        got += rep.bracket_compatible ? "" : " bracket-mismatch;";
        got += rep.footnote_u3 ? "" : " footnote-fail;";
        got += rep.gamma4_central ? "" : " gamma4-noncentral;";
        got += rep.deg3_brackets_vanish ? "" : " deg3-bracket-nonzero;";
        r.computed = got.empty() ? "all hold" : got;
        r.status = rep.ok() ? CheckReport::Pass : CheckReport::Fail;
    });

    ck.run("prop-pbw-dims/p=" + std::to_string(p), [&](CheckReport& r) {
        AugFiltration A = aug_filtration(p, 1, n, 3, true);
        HilbertSeries H = pbw_hilbert(1, 3);
        std::vector<int> hs(H.coeffs.begin(), H.coeffs.end());
        r.expected = "(1, 2, 4, 6)";
        std::string got = "(";
        for (size_t i = 0; i < A.dims.size(); ++i)
            got += (i ? ", " : "") + std::to_string(A.dims[i]);
        got += ")";
        r.computed = got;
        bool ok = A.dims.size() == 4;
        for (int i = 0; i < 4 && ok; ++i) ok = (A.dims[i] == H.coeffs[i]);
        r.status = ok ? CheckReport::Pass : CheckReport::Fail;
    });

    ck.run("lem-yj-generate/p=" + std::to_string(p), [&](CheckReport& r) {
        const QuatQuotient& P = QuatQuotient::get(p, 1, n, true);
        DualFiltration& D = dual_filtration(P);
        D.compute_upto(2);
        std::vector<std::vector<FqField::Elem>> coords;
        for (int j = 0; j < 2; ++j) coords.push_back(D.grade_coords(y_element(P, j), 1));
        // rank of the 2 x dim matrix
        const FqField& F = *P.Fq2;
        FqF f{&F};
        Mat<FqF> M(2, (int)coords[0].size(), f.zero());
        for (int i = 0; i < 2; ++i)
            for (size_t j = 0; j < coords[i].size(); ++j) M.at(i, (int)j) = coords[i][j];
        int rk = mat_rank(f, M);
        r.expected = "rank 2";
        r.computed = "rank " + std::to_string(rk);
        r.status = (rk == 2) ? CheckReport::Pass : CheckReport::Fail;
    });

    ck.run("eq-yj-char/p=" + std::to_string(p), [&](CheckReport& r) {
        // exact eigenvector law at every level up to n
        bool ok = true;
        for (int lev = 2; lev <= n; ++lev) {
            const QuatQuotient& P = QuatQuotient::get(p, 1, lev, true);
            const FqField& F = *P.Fq2;
            for (int j = 0; j < 2; ++j) {
                GroupAlgElt Y = y_element(P, j);
                GroupAlgElt conj;
                for (const auto& [idx, c] : Y) conj[P.conj_torus[idx]] = c;
                long long alpha_exp = ((long long)(F.q - 1) / 1) * 1;  // (q-1) p^j
                alpha_exp = (long long)(p - 1);
                for (int t = 0; t < j; ++t) alpha_exp = alpha_exp * p % (F.q - 1);
                FqField::Elem scal = F.from_dlog(alpha_exp);
                for (const auto& [idx, c] : conj)
                    if (F.mul(Y.count(idx) ? Y.at(idx) : 0, scal) != c) ok = false;
            }
        }
        r.expected = "[mu] Y_j [mu]^{-1} = alpha_j(mu) Y_j at all levels";
        r.computed = ok ? "holds" : "fails";
        r.status = ok ? CheckReport::Pass : CheckReport::Fail;
    });

    ck.run("prop-yiyj-f1/p=" + std::to_string(p), [&](CheckReport& r) {
        const QuatQuotient& P = QuatQuotient::get(p, 1, n, true);
        auto c01 = bracket_gr2(P, 0, 1);
        bool nz = false;
        for (auto c : c01)
            if (c != 0) nz = true;
        auto c00 = bracket_gr2(P, 0, 0);
        bool z00 = true;
        for (auto c : c00)
            if (c != 0) z00 = false;
        r.expected = "[y0,y1] != 0 and [y0,y0] = 0";
        r.computed = std::string(nz ? "[y0,y1]!=0" : "[y0,y1]=0") + ", " +
                     (z00 ? "[y0,y0]=0" : "[y0,y0]!=0");
        r.status = (nz && z00) ? CheckReport::Pass : CheckReport::Fail;
    });

    ck.run("pbw-deg2-joint-span/p=" + std::to_string(p), [&](CheckReport& r) {
        const QuatQuotient& P = QuatQuotient::get(p, 1, n, true);
        DualFiltration& D = dual_filtration(P);
        D.compute_upto(3);
        const FqField& F = *P.Fq2;
        FqF f{&F};
        GroupAlgElt y0 = y_element(P, 0), y1 = y_element(P, 1);
        std::vector<GroupAlgElt> prods;
        auto mul = [&](const GroupAlgElt& a, const GroupAlgElt& b) {
            GroupAlgElt o;
            for (const auto& [xa, ca] : a)
                for (const auto& [xb, cb] : b) {
                    int idx = P.mul_ids(xa, xb);
                    FqField::Elem c = F.mul(ca, cb);
                    auto it = o.find(idx);
                    if (it == o.end()) o[idx] = c;
                    else it->second = F.add(it->second, c);
                }
            return o;
        };
        prods.push_back(mul(y0, y0));
        prods.push_back(mul(y0, y1));
        prods.push_back(mul(y1, y1));
        prods.push_back(mul(y1, y0));
        int d = D.graded_dim(2);
        Mat<FqF> M((int)prods.size(), d, f.zero());
        for (size_t i = 0; i < prods.size(); ++i) {
            auto co = D.grade_coords(prods[i], 2);
            for (int j = 0; j < d; ++j) M.at((int)i, j) = co[j];
        }
        int rk = mat_rank(f, M);
        r.expected = "degree-2 monomials in y0,y1 together with h'_0 span gr^2 (dim 4)";
        r.computed = "rank " + std::to_string(rk) + " of dim " + std::to_string(d);
        r.status = (rk == d && d == 4) ? CheckReport::Pass : CheckReport::Fail;
    });

    for (int i = 1; i <= 2; ++i) {
        ck.run("lem-Jbar/p=" + std::to_string(p) + "/i=" + std::to_string(i),
               [&](CheckReport& r) {
                   bool ok = filtration_compare(p, 1, n, i);
                   r.expected = "J-bar_{i/2} = m^i";
                   r.computed = ok ? "equal" : "different";
                   r.status = ok ? CheckReport::Pass : CheckReport::Fail;
               });
    }

    ck.run("cor-hj-quotient-commutative/p=" + std::to_string(p), [&](CheckReport& r) {
        // in gr/(h'_0) up to degree 3 the degree-1 elements commute:
        // [y_i, y_j y_k] lies in span(h'_0 y_t) + m^4
        const QuatQuotient& P = QuatQuotient::get(p, 1, n, true);
        DualFiltration& D = dual_filtration(P);
        D.compute_upto(4);
        const FqField& F = *P.Fq2;
        FqF f{&F};
        GroupAlgElt ys[2] = {y_element(P, 0), y_element(P, 1)};
        auto mul = [&](const GroupAlgElt& a, const GroupAlgElt& b) {
            GroupAlgElt o;
            for (const auto& [xa, ca] : a)
                for (const auto& [xb, cb] : b) {
                    int idx = P.mul_ids(xa, xb);
                    FqField::Elem c = F.mul(ca, cb);
                    auto it = o.find(idx);
                    if (it == o.end()) o[idx] = c;
                    else it->second = F.add(it->second, c);
                }
            return o;
        };
        auto sub2 = [&](GroupAlgElt a, const GroupAlgElt& b) {
            for (const auto& [x, c] : b) {
                auto it = a.find(x);
                if (it == a.end()) a[x] = F.neg(c);
                else it->second = F.sub(it->second, c);
            }
            return a;
        };
        GroupAlgElt hp = sub2(mul(ys[0], ys[1]), mul(ys[1], ys[0]));
        int d3 = D.graded_dim(3);
        // ideal part in degree 3: h'_0 y_t and y_t h'_0
        ColSpan<FqF> ideal(f, d3);
        for (int t = 0; t < 2; ++t) {
            auto v1 = D.grade_coords(mul(hp, ys[t]), 3);
            auto v2 = D.grade_coords(mul(ys[t], hp), 3);
            ideal.add(v1);
            ideal.add(v2);
        }
        bool ok = true;
        for (int i2 = 0; i2 < 2 && ok; ++i2)
            for (int j2 = 0; j2 < 2 && ok; ++j2)
                for (int k2 = 0; k2 < 2 && ok; ++k2) {
                    GroupAlgElt m2 = mul(ys[j2], ys[k2]);
                    GroupAlgElt comm = sub2(mul(ys[i2], m2), mul(m2, ys[i2]));
                    auto co = D.grade_coords(comm, 3);
                    if (!ideal.contains(co)) ok = false;
                }
        r.expected = "degree-1 elements commute modulo (h'_j) up to degree 3";
        r.computed = ok ? "commutative" : "obstruction found";
        r.status = ok ? CheckReport::Pass : CheckReport::Fail;
    });

    // f = 2 at reduced level: [y_i, y_j] = 0 for i - j != f, nonzero for i - j = f
    ck.run("prop-yiyj-f2/p=" + std::to_string(p), [&](CheckReport& r) {
        const QuatQuotient& P = QuatQuotient::get(p, 2, 3, true);
        DualFiltration& D = dual_filtration(P);
        D.compute_upto(3);
        HilbertSeries H = pbw_hilbert(2, 2);
        bool dims_ok = (D.graded_dim(0) == H.coeffs[0] && D.graded_dim(1) == H.coeffs[1] &&
                        D.graded_dim(2) == H.coeffs[2]);
        auto z01 = bracket_gr2(P, 0, 1);
        bool z = true;
        for (auto c : z01)
            if (c != 0) z = false;
        auto nz02 = bracket_gr2(P, 0, 2);
        bool nz = false;
        for (auto c : nz02)
            if (c != 0) nz = true;
        r.expected = "grades match PBW at the reduced level; [y0,y1]=0, [y0,y2]!=0";
        r.computed = std::string(dims_ok ? "dims ok" : "dims off") + ", [y0,y1]" +
                     (z ? "=0" : "!=0") + ", [y0,y2]" + (nz ? "!=0" : "=0");
        r.status = (dims_ok && z && nz) ? CheckReport::Pass : CheckReport::Fail;
    });
}

void suite_wchi3(const SuiteParams& sp, std::vector<CheckReport>& out) {
    int p = sp.p, n = sp.level;
    const QuatSetup& s = QuatSetup::get(p, 1, n);
    long long q21 = (long long)p * p - 1;
    IrrList irr = qchar_irr_list(s);
    std::vector<long long> chis = {0, 1, 7};
    if (sp.chi_exp != SuiteParams::INT_UNSET) chis = {sp.chi_exp};
    for (long long chi : chis) {
        Checker ck{&out, "p=" + std::to_string(p) + " chi=" + std::to_string(chi)};
        std::string tag = "/p=" + std::to_string(p) + "/chi=" + std::to_string(chi);
        ck.run("cor-structure-Wchi3" + tag, [&](CheckReport& r) {
            GMod W = w_chi(s, chi, 3);
            DualFiltration& D = dual_filtration(*s.P);
            std::vector<int> dims = {D.graded_dim(0), D.graded_dim(1), D.graded_dim(2)};
            bool ok = (W.dim == 7) && dims == std::vector<int>{1, 2, 4};
            // eigenchars on the grades, twisted by chi
            long long al = p - 1;
            auto e1 = D.grade_eigchars(1);
            std::vector<long long> w1 = {(chi + al) % q21, ((chi - al) % q21 + q21) % q21};
            std::sort(w1.begin(), w1.end());
            std::vector<long long> g1;
            for (auto e : e1) g1.push_back(((e + chi) % q21 + q21) % q21);
            std::sort(g1.begin(), g1.end());
            auto e2 = D.grade_eigchars(2);
            std::vector<long long> w2 = {chi, chi, (chi + 2 * al) % q21,
                                         ((chi - 2 * al) % q21 + q21) % q21};
            std::sort(w2.begin(), w2.end());
            std::vector<long long> g2;
            for (auto e : e2) g2.push_back(((e + chi) % q21 + q21) % q21);
            std::sort(g2.begin(), g2.end());
            ok = ok && (g1 == w1) && (g2 == w2);
            r.expected = "dims (1,2,4), eigenchars (triv; a,a^-1; triv^2,a^2,a^-2) x chi";
            r.computed = ok ? "match" : "mismatch";
            r.status = ok ? CheckReport::Pass : CheckReport::Fail;
        });
        ck.run("wbar-chi3-socle" + tag, [&](CheckReport& r) {
            GMod Wb = wbar_chi3(s, chi);
            auto sl = socle_layers(Wb, irr);
            std::vector<JHMultiset> want(3);
            want[0][IrrLabel::qchar(chi, q21)] = 2;
            want[1][IrrLabel::qchar(chi + (p - 1), q21)] = 1;
            want[1][IrrLabel::qchar(chi - (p - 1), q21)] = 1;
            want[2][IrrLabel::qchar(chi, q21)] = 1;
            r.expected = "dim 5, " + layers_to_string(want);
            r.computed = "dim " + std::to_string(Wb.dim) + ", " + layers_to_string(sl);
            r.status = (Wb.dim == 5 && sl == want) ? CheckReport::Pass : CheckReport::Fail;
        });
        ck.run("Wchi-twist" + tag, [&](CheckReport& r) {
            // W_{chi,n} = chi tensor W_{1,n}
            GMod W1 = w_chi(s, 0, 3);
            GMod Wc = w_chi(s, chi, 3);
            // twist W1 by the character chi
            GMod tw = W1;
            const FqField& F = *s.P->Fq2;
            Mat<FqF>& T = tw.act.back();
            FqField::Elem c = F.from_dlog(chi);
            for (auto& x : T.a) x = F.mul(x, c);
            bool ok = is_isomorphic(tw, Wc);
            r.expected = "W_{chi,3} = chi tensor W_{1,3}";
            r.computed = ok ? "iso" : "not iso";
            r.status = ok ? CheckReport::Pass : CheckReport::Fail;
        });
    }
}

void suite_ext1(const SuiteParams& sp, std::vector<CheckReport>& out) {
    int p = sp.p, n = sp.level;
    long long q21 = (long long)p * p - 1;
    Checker ck{&out, "p=" + std::to_string(p) + " n=" + std::to_string(n)};
    ck.run("prop-Ext1-U1/p=" + std::to_string(p), [&](CheckReport& r) {
        bool ok = true;
        std::string bad;
        for (long long lam = 0; lam < q21; ++lam) {
            int got = ext1_chars(p, 1, lam, 0, n);
            int want = (lam == p - 1 || lam == q21 - (p - 1)) ? 1 : 0;
            if (got != want) {
                ok = false;
                bad += " lam=" + std::to_string(lam);
            }
        }
        r.expected = "Ext^1(chi lam, chi) = 1 iff lam = alpha^{+-1}, over all 24 twists";
        r.computed = ok ? "law holds" : ("violations:" + bad);
        r.status = ok ? CheckReport::Pass : CheckReport::Fail;
    });
}

void suite_weights(const SuiteParams& sp, std::vector<CheckReport>& out) {
    (void)sp;
    Checker ck{&out, ""};

    // encoded sub-case instances quoted from the theorems
    ck.run("thm-bdj-instances", [&](CheckReport& r) {
        bool ok = true;
        {
            RhoBarParams P{RhoBarParams::Irreducible, 5, 2, 0};
            auto W = bdj_weights(P);
            std::vector<IrrLabel> want = {IrrLabel::serre(2, 1, 5), IrrLabel::serre(2, 3, 5)};
            std::sort(want.begin(), want.end());
            ok = ok && (W == want);
        }
        {
            RhoBarParams P{RhoBarParams::ReducibleNonsplit, 5, 0, 0, true, true};
            auto W = bdj_weights(P);
            ok = ok && (W == std::vector<IrrLabel>{IrrLabel::serre(4, 1, 5)});
        }
        {
            RhoBarParams P{RhoBarParams::ReducibleSplit, 5, 3, 0};
            auto W = bdj_weights(P);
            ok = ok && (W == std::vector<IrrLabel>{IrrLabel::serre(3, 1, 5)});
        }
        {
            RhoBarParams P{RhoBarParams::ReducibleSplit, 5, 0, 0};
            auto W = bdj_weights(P);
            std::vector<IrrLabel> want = {IrrLabel::serre(0, 1, 5), IrrLabel::serre(2, 2, 5),
                                          IrrLabel::serre(4, 1, 5)};
            std::sort(want.begin(), want.end());
            ok = ok && (W == want);
        }
        r.expected = "encoded BDJ sub-cases match the theorem";
        r.computed = ok ? "match" : "mismatch";
        r.status = ok ? CheckReport::Pass : CheckReport::Fail;
    });

    ck.run("thm-khare-instances", [&](CheckReport& r) {
        bool ok = true;
        {
            RhoBarParams P{RhoBarParams::ReducibleNonsplit, 5, 2, 0};
            auto W = khare_weights(P);
            ok = ok && (W == std::vector<long long>{4, 20});
        }
        {
            RhoBarParams P{RhoBarParams::Irreducible, 5, 2, 0};
            auto W = khare_weights(P);
            ok = ok && (W == std::vector<long long>{4, 8, 16, 20});
        }
        {
            RhoBarParams P{RhoBarParams::ReducibleNonsplit, 5, 0, 0, true, true};
            auto W = khare_weights(P);
            ok = ok && (W == std::vector<long long>{6});
        }
        r.expected = "encoded Khare sub-cases match the theorem";
        r.computed = ok ? "match" : "mismatch";
        r.status = ok ? CheckReport::Pass : CheckReport::Fail;
    });

    ck.run("khare-frobenius-symmetry", [&](CheckReport& r) {
        bool ok = true;
        for (int p : {5, 7, 11}) {
            auto run_case = [&](RhoBarParams P) {
                auto W = khare_weights(P);
                if (!frobenius_symmetric(p, W)) ok = false;
                auto B = bdj_weights(P);
                std::set<IrrLabel> S(B.begin(), B.end());
                if (S.size() != B.size()) ok = false;  // multiplicity-freeness
            };
            for (int s = 0; s <= p - 2; ++s) {
                for (int rr = 0; rr <= p - 1; ++rr)
                    run_case({RhoBarParams::Irreducible, p, rr, s});
                for (int rr = 0; rr <= p - 2; ++rr) {
                    run_case({RhoBarParams::ReducibleSplit, p, rr, s});
                    run_case({RhoBarParams::ReducibleNonsplit, p, rr, s});
                    if (rr == 0) {
                        run_case({RhoBarParams::ReducibleNonsplit, p, 0, s, true, false});
                        run_case({RhoBarParams::ReducibleNonsplit, p, 0, s, true, true});
                    }
                }
            }
        }
        r.expected = "all W_D stable under k -> pk; all BDJ sets repeat-free (p in 5,7,11)";
        r.computed = ok ? "holds" : "violated";
        r.status = ok ? CheckReport::Pass : CheckReport::Fail;
    });

    ck.run("sec63-ab-choice-rows", [&](CheckReport& r) {
        bool ok = true;
        int p = 5;
        long long n = 24;
        RhoBarParams P{RhoBarParams::Irreducible, p, 2, 0};
        // row 1: chi = xi^r alpha^{-1} zeta^{s+1} -> (r, s)
        long long chi1 = ((2 - 4 + 6) % n + n) % n;
        ok = ok && (ab_choice(p, chi1, P) == std::make_pair(2, 0LL));
        // row 2: chi = xi^{pr} alpha zeta^{s+1} -> (p-3-r, r+s+1)
        long long chi2 = ((10 + 4 + 6) % n + n) % n;
        ok = ok && (ab_choice(p, chi2, P) == std::make_pair(0, 3LL));
        // row 3: chi = xi^r zeta^{s+1} -> (r-2, s+1)
        long long chi3 = (2 + 6) % n;
        ok = ok && (ab_choice(p, chi3, P) == std::make_pair(0, 1LL));
        // row 4: chi = xi^{pr} zeta^{s+1} -> (p-1-r, r+s)
        long long chi4 = (10 + 6) % n;
        ok = ok && (ab_choice(p, chi4, P) == std::make_pair(2, 2LL));
        r.expected = "the four selection rows";
        r.computed = ok ? "match" : "mismatch";
        r.status = ok ? CheckReport::Pass : CheckReport::Fail;
    });

    ck.run("sec64-a-ideal", [&](CheckReport& r) {
        bool ok = true;
        int p = 5;
        {
            RhoBarParams P{RhoBarParams::Irreducible, p, 2, 0};
            auto WD = khare_weights(P);
            ok = ok && (a_ideal(p, 8, WD) == AIdeal::Y);   // chi = xi^r zeta^{s+1}
            ok = ok && (a_ideal(p, 4, WD) == AIdeal::Z);   // chi alpha = xi^r zeta
            ok = ok && (a_ideal(p, 16, WD) == AIdeal::Z);  // by symmetry
        }
        {
            RhoBarParams P{RhoBarParams::ReducibleNonsplit, p, 0, 0, true, true};
            auto WD = khare_weights(P);
            ok = ok && (a_ideal(p, 6, WD) == AIdeal::YZ);  // singleton
        }
        // no clash for (C1)/(C2) at p in {5,7,11}
        for (int pp : {5, 7, 11}) {
            for (int s = 0; s <= pp - 2; ++s) {
                for (int rr = 2; rr <= pp - 3; ++rr) {
                    RhoBarParams P{RhoBarParams::Irreducible, pp, rr, s};
                    auto WD = khare_weights(P);
                    for (auto chi : WD) a_ideal(pp, chi, WD);
                }
                for (int rr = 1; rr <= pp - 3; ++rr) {
                    RhoBarParams P{RhoBarParams::ReducibleNonsplit, pp, rr, s};
                    auto WD = khare_weights(P);
                    for (auto chi : WD) a_ideal(pp, chi, WD);
                }
            }
        }
        r.expected = "definition instances; no clash over (C1)/(C2), p in {5,7,11}";
        r.computed = ok ? "consistent" : "mismatch";
        r.status = ok ? CheckReport::Pass : CheckReport::Fail;
    });

    // cross-consistency of JH intersections (the deformation hypotheses)
    {
        int p = 5;
        for (int s = 0; s <= p - 2; ++s) {
            for (int rr = 2; rr <= p - 3; ++rr) {
                Checker c2{&out, "C1 r=" + std::to_string(rr) + " s=" + std::to_string(s)};
                c2.run("cross-check-C1/r=" + std::to_string(rr) + "/s=" + std::to_string(s),
                       [&](CheckReport& r) {
                           RhoBarParams P{RhoBarParams::Irreducible, p, rr, s};
                           auto rep = cross_check(P);
                           r.expected = "psi2 count 1; W(rho) (2 elts) inside JH(Sym1 x Theta(psi3))";
                           r.computed = "psi2=" + std::to_string(rep.psi2_count) +
                                        " containment=" + (rep.c1_containment ? "yes" : "no");
                           r.status = (rep.applicable && rep.psi2_ok && rep.c1_containment)
                                          ? CheckReport::Pass
                                          : CheckReport::Fail;
                       });
            }
            for (int rr = 1; rr <= p - 3; ++rr) {
                Checker c2{&out, "C2 r=" + std::to_string(rr) + " s=" + std::to_string(s)};
                c2.run("cross-check-C2/r=" + std::to_string(rr) + "/s=" + std::to_string(s),
                       [&](CheckReport& r) {
                           RhoBarParams P{RhoBarParams::ReducibleNonsplit, p, rr, s};
                           auto rep = cross_check(P);
                           r.expected = "exactly one Serre weight in JH(Sym1 x Theta(psi2))";
                           r.computed = "psi2=" + std::to_string(rep.psi2_count);
                           r.status = (rep.applicable && rep.psi2_ok) ? CheckReport::Pass
                                                                      : CheckReport::Fail;
                       });
            }
        }
    }
}

void suite_theta_chain(const SuiteParams& sp, std::vector<CheckReport>& out) {
    int p = sp.p;
    struct Inst {
        RhoBarParams P;
        std::string label;
    };
    std::vector<Inst> insts;
    for (int s = 0; s <= p - 2; ++s) {
        for (int rr = 2; rr <= p - 3; ++rr)
            insts.push_back({{RhoBarParams::Irreducible, p, rr, s},
                             "C1/r=" + std::to_string(rr) + "/s=" + std::to_string(s)});
        for (int rr = 1; rr <= p - 3; ++rr)
            insts.push_back({{RhoBarParams::ReducibleNonsplit, p, rr, s},
                             "C2/r=" + std::to_string(rr) + "/s=" + std::to_string(s)});
    }
    if (sp.chi_exp != SuiteParams::INT_UNSET) {
        // single-chi invocation: run the chain directly for chi
        Checker ck{&out, "p=" + std::to_string(p) + " chi=" + std::to_string(sp.chi_exp)};
        ck.run("prop-lattice-wtTheta/chi=" + std::to_string(sp.chi_exp), [&](CheckReport& r) {
            long long n = (long long)p * p - 1;
            long long e = ((sp.chi_exp % n) + n) % n;
            // chi = [xi]^{a+2+(p+1)b}
            int a = -3;
            long long b = 0;
            for (int aa = -2; aa <= p - 2 && a == -3; ++aa)
                for (long long bb = 0; bb < p + 1; ++bb)
                    if (((aa + 2 + (p + 1) * bb) % n + n) % n == e) {
                        a = aa;
                        b = bb;
                        break;
                    }
            if (a == -3) throw std::runtime_error("no (a,b) for chi");
            ThetaChain ch = build_theta_chain(p, a, b, sp.precision, sp.level);
            r.expected = "Theta/p filtration chi -- chi a^{-1} -- chi; tildeTheta/p = Wbar";
            r.computed = std::string(ch.theta_filtration_ok ? "filtration ok" : "filtration bad") +
                         (ch.tilde_iso_wbar ? ", iso" : ", not iso");
            r.status = (ch.theta_filtration_ok && ch.tilde_iso_wbar && ch.tilde_cosocle_ok &&
                        ch.tilde_killed_m3)
                           ? CheckReport::Pass
                           : CheckReport::Fail;
        });
        return;
    }
    for (const auto& inst : insts) {
        auto WD = khare_weights(inst.P);
        for (long long chi : WD) {
            Checker ck{&out, inst.P.str() + " chi=" + std::to_string(chi)};
            ck.run("prop-lattice-wtTheta/" + inst.label + "/chi=" + std::to_string(chi),
                   [&](CheckReport& r) {
                       auto [a, b] = ab_choice(p, chi, inst.P);
                       ThetaChain ch = build_theta_chain(p, a, b, sp.precision, sp.level);
                       r.expected =
                           "cosocle filtration chi -- chi a^{-1} -- chi; tildeTheta/p = "
                           "Wbar_{chi,3} (dim 5)";
                       std::string c;
                       c += ch.theta_filtration_ok ? "theta-filtration ok" : "theta-filtration BAD";
                       c += ch.tilde_cosocle_ok ? ", cosocle ok" : ", cosocle BAD";
                       c += ch.tilde_iso_wbar ? ", iso Wbar" : ", NOT iso Wbar";
                       c += ch.tilde_killed_m3 ? ", killed by m^3" : ", not killed";
                       c += ", dim " + std::to_string(ch.tilde_dim);
                       r.computed = c;
                       r.status = (ch.theta_filtration_ok && ch.tilde_cosocle_ok &&
                                   ch.tilde_iso_wbar && ch.tilde_killed_m3 && ch.tilde_dim == 5)
                                      ? CheckReport::Pass
                                      : CheckReport::Fail;
                   });
        }
    }
}

void suite_pbw(const SuiteParams& sp, std::vector<CheckReport>& out) {
    Checker ck{&out, "p=" + std::to_string(sp.p) + " f=" + std::to_string(sp.f) +
                         " n=" + std::to_string(sp.level)};
    ck.run("prop-pbw-series", [&](CheckReport& r) {
        HilbertSeries H1 = pbw_hilbert(1, 4);
        bool ok = (H1.coeffs == std::vector<long long>{1, 2, 4, 6, 9});
        HilbertSeries H2 = pbw_hilbert(2, 1);
        ok = ok && (H2.coeffs[1] == 4);
        r.expected = "f=1: (1,2,4,6,9); f=2 degree 1: 4";
        r.computed = ok ? "match" : "mismatch";
        r.status = ok ? CheckReport::Pass : CheckReport::Fail;
    });
    ck.run("pbw-vs-group-algebra/p=" + std::to_string(sp.p), [&](CheckReport& r) {
        AugFiltration A = aug_filtration(sp.p, sp.f, sp.level, 3, true);
        HilbertSeries H = pbw_hilbert(sp.f, 3);
        bool ok = true;
        std::string got = "(";
        for (int i = 0; i <= 3; ++i) {
            if (A.dims[i] != H.coeffs[i]) ok = false;
            got += (i ? ", " : "") + std::to_string(A.dims[i]);
        }
        got += ")";
        r.expected = "group-algebra grades match the PBW series";
        r.computed = got;
        r.status = ok ? CheckReport::Pass : CheckReport::Fail;
    });
    ck.run("deg1-eigenchars/p=" + std::to_string(sp.p), [&](CheckReport& r) {
        AugFiltration A = aug_filtration(sp.p, 1, sp.level, 1, false);
        long long q21 = (long long)sp.p * sp.p - 1;
        std::vector<long long> want = {(long long)(sp.p - 1), q21 - (sp.p - 1)};
        std::sort(want.begin(), want.end());
        r.expected = "{alpha, alpha^{-1}}";
        bool ok = (A.eigchars[1] == want);
        r.computed = ok ? "match" : "mismatch";
        r.status = ok ? CheckReport::Pass : CheckReport::Fail;
    });
}

void suite_gk(const SuiteParams& sp, std::vector<CheckReport>& out) {
    (void)sp;
    Checker ck{&out, ""};
    ck.run("cor-hj-series-identity", [&](CheckReport& r) {
        bool ok = true;
        for (int f = 1; f <= 3; ++f) {
            // (1-t^2)^f * pbw = series of 2f degree-1 variables, up to degree 6
            auto lhs = expand_series({{2, f}}, {{1, 2 * f}, {2, f}}, 6);
            auto rhs = expand_series({}, {{1, 2 * f}}, 6);
            if (lhs != rhs) ok = false;
        }
        r.expected = "(1-t^2)^f pbw = free series on 2f degree-1 variables (deg <= 6)";
        r.computed = ok ? "identity holds" : "mismatch";
        r.status = ok ? CheckReport::Pass : CheckReport::Fail;
    });
    ck.run("cor-gk-dims", [&](CheckReport& r) {
        bool ok = true;
        for (int f = 1; f <= 3; ++f) {
            MonomialQuotient Q;
            Q.var_deg.assign(2 * f, 1);
            for (int j = 0; j < f; ++j) {
                std::vector<int> g(2 * f, 0);
                g[2 * j] = 1;
                g[2 * j + 1] = 1;
                Q.gens.push_back(g);
            }
            if (gk_dim(Q) != f) ok = false;
            auto h = quotient_hilbert(Q, 8);
            if (growth_degree(h) != f) ok = false;
            if (f == 1 && !(h[0] == 1 && h[1] == 2 && h[2] == 2 && h[3] == 2)) ok = false;
        }
        // zero ideal in 2f variables
        MonomialQuotient Z;
        Z.var_deg.assign(4, 1);
        if (gk_dim(Z) != 4) ok = false;
        r.expected = "gk(F[y_j,z_j]/(y_j z_j)) = f for f in {1,2,3}; free ring gk = 2f";
        r.computed = ok ? "match" : "mismatch";
        r.status = ok ? CheckReport::Pass : CheckReport::Fail;
    });
    ck.run("cor-gkdim-criterion", [&](CheckReport& r) {
        bool ok = true;
        for (int f = 1; f <= 2; ++f) {
            MonomialQuotient Q;
            Q.var_deg.assign(2 * f, 1);
            for (int j = 0; j < f; ++j) {
                std::vector<int> g(2 * f, 0);
                g[2 * j] = 1;
                g[2 * j + 1] = 1;
                Q.gens.push_back(g);
            }
            auto res = criterion_bound(f, {Q});
            if (!(res.bound == f && res.growth == f && res.kills_ideal)) ok = false;
        }
        {
            // components with a(chi) = (y) or (z): growth 1
            MonomialQuotient Qy;
            Qy.var_deg = {1, 1};
            Qy.gens = {{1, 0}};
            MonomialQuotient Qz;
            Qz.var_deg = {1, 1};
            Qz.gens = {{0, 1}};
            auto res = criterion_bound(1, {Qy, Qz});
            if (!(res.bound == 1 && res.growth == 1)) ok = false;
        }
        {
            // zero module
            MonomialQuotient Q0;
            Q0.var_deg = {1, 1};
            Q0.gens = {{0, 0}};
            auto res = criterion_bound(1, {Q0});
            if (!(res.growth == 0)) ok = false;
        }
        r.expected = "bound f with matching growth; (y)/(z) components growth 1; zero module 0";
        r.computed = ok ? "match" : "mismatch";
        r.status = ok ? CheckReport::Pass : CheckReport::Fail;
    });
}

}  // namespace

SuiteResult run_suite(const std::string& name, const SuiteParams& sp) {
    SuiteResult R;
    R.suite = name;
    R.params = sp;
    if (name == "diamond") suite_diamond(sp, R.checks);
    else if (name == "section3") suite_section3(sp, R.checks);
    else if (name == "section34-glue") suite_section34(sp, R.checks);
    else if (name == "quaternion-lie") suite_quaternion_lie(sp, R.checks);
    else if (name == "wchi3") suite_wchi3(sp, R.checks);
    else if (name == "ext1") suite_ext1(sp, R.checks);
    else if (name == "weights-tables") suite_weights(sp, R.checks);
    else if (name == "theta-chain") suite_theta_chain(sp, R.checks);
    else if (name == "pbw") suite_pbw(sp, R.checks);
    else if (name == "gk") suite_gk(sp, R.checks);
    else throw std::invalid_argument("unknown suite: " + name);
    std::sort(R.checks.begin(), R.checks.end(),
              [](const CheckReport& a, const CheckReport& b) { return a.id < b.id; });
    return R;
}

std::string to_json(const SuiteResult& r, bool with_timings) {
    std::ostringstream os;
    auto esc = [](const std::string& s) {
        std::string o;
        for (char c : s) {
            if (c == '"' || c == '\\') o += '\\';
            o += c;
        }
        return o;
    };
    os << "{\n  \"version\": 1,\n  \"suite\": \"" << esc(r.suite) << "\",\n  \"params\": {";
    os << "\"p\": " << r.params.p << ", \"f\": " << r.params.f
       << ", \"precision\": " << r.params.precision << ", \"level\": " << r.params.level << "},\n";
    os << "  \"checks\": [\n";
    for (size_t i = 0; i < r.checks.size(); ++i) {
        const auto& c = r.checks[i];
        os << "    {\"id\": \"" << esc(c.id) << "\", \"params\": \"" << esc(c.params)
           << "\", \"status\": \""
           << (c.status == CheckReport::Pass
                   ? "pass"
                   : (c.status == CheckReport::Fail ? "fail" : "inapplicable"))
           << "\", \"expected\": \"" << esc(c.expected) << "\", \"computed\": \""
           << esc(c.computed) << "\"";
        if (with_timings) os << ", \"wall_ms\": " << c.wall_ms;
        os << "}";
        if (i + 1 < r.checks.size()) os << ",";
        os << "\n";
    }
    os << "  ]\n}\n";
    return os.str();
}

std::string to_text(const SuiteResult& r) {
    std::ostringstream os;
    for (const auto& c : r.checks) {
        std::string st = c.status == CheckReport::Pass
                             ? "PASS"
                             : (c.status == CheckReport::Fail ? "FAIL" : "N/A ");
        os << st << "  " << c.id;
        if (c.status == CheckReport::Fail)
            os << "\n      expected: " << c.expected << "\n      computed: " << c.computed;
        os << "\n";
    }
    int pass = 0, fail = 0, na = 0;
    for (const auto& c : r.checks) {
        if (c.status == CheckReport::Pass) ++pass;
        else if (c.status == CheckReport::Fail) ++fail;
        else ++na;
    }
    os << r.suite << ": " << pass << " passed, " << fail << " failed";
    if (na) os << ", " << na << " inapplicable";
    os << "\n";
    return os.str();
}

}  // namespace tamelat

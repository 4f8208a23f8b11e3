#include "tamelat/quatgroup.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace tamelat {

QuatRing::QuatRing(const WittRing& ring, int ff, int nn) : W(&ring), f(ff), n(nn) {
    ca = (n + 1) / 2;
    cb = n / 2;
    if (W->N < ca) throw std::runtime_error("QuatRing: Witt precision exhausted");
    if (W->deg != 2 * f) throw std::runtime_error("QuatRing: ring degree mismatch");
}

QuatElem QuatRing::canon(const QuatElem& a) const {
    return QuatElem{W->mod_p(a.x, ca), W->mod_p(a.y, cb)};
}

QuatElem QuatRing::one() const { return QuatElem{W->one(), W->zero()}; }

QuatElem QuatRing::mul(const QuatElem& a, const QuatElem& b) const {
    // (x + w y)(c + w d) = (xc + p sigma(y) d) + w (sigma(x) d + y c)
    ONElem xc = W->mul(a.x, b.x);
    ONElem sy_d = W->mul(sigma(a.y), b.y);
    ONElem xpart = W->add(xc, W->mul_p(sy_d, 1));
    ONElem ypart = W->add(W->mul(sigma(a.x), b.y), W->mul(a.y, b.x));
    return canon(QuatElem{xpart, ypart});
}

QuatElem QuatRing::inv(const QuatElem& a) const {
    ONElem u = W->sub(W->mul(a.x, sigma(a.x)), W->mul_p(W->mul(sigma(a.y), a.y), 1));
    ONElem ui = W->inv(u);
    return canon(QuatElem{W->mul(sigma(a.x), ui), W->neg(W->mul(a.y, ui))});
}

bool QuatRing::eq(const QuatElem& a, const QuatElem& b) const {
    return W->mod_p(a.x, ca) == W->mod_p(b.x, ca) && W->mod_p(a.y, cb) == W->mod_p(b.y, cb);
}

std::uint64_t QuatRing::encode(const QuatElem& a) const {
    std::uint64_t xk = W->encode_mod(a.x, ca);
    std::uint64_t yk = W->encode_mod(a.y, cb);
    std::uint64_t ymax = 1;
    for (int i = 0; i < W->deg; ++i) {
        std::uint64_t pm = 1;
        for (int j = 0; j < cb; ++j) pm *= (std::uint64_t)W->p;
        ymax *= pm;
    }
    return xk * ymax + yk;
}

int QuatRing::vD(const QuatElem& a) const {
    int vx = W->val(W->mod_p(a.x, ca));
    int vy = W->val(W->mod_p(a.y, cb));
    int r = n;
    if (vx < ca && 2 * vx < r) r = 2 * vx;
    if (vy < cb && 2 * vy + 1 < r) r = 2 * vy + 1;
    return r;
}

QuatElem QuatRing::one_plus_wpi_teich(FqField::Elem lam) const {
    return canon(QuatElem{W->one(), W->teich(lam)});
}

QuatElem QuatRing::one_plus_p_teich(FqField::Elem lam) const {
    return canon(QuatElem{W->add(W->one(), W->mul_p(W->teich(lam), 1)), W->zero()});
}

QuatElem QuatRing::teich(FqField::Elem lam) const {
    return canon(QuatElem{W->teich(lam), W->zero()});
}

QuatQuotient::QuatQuotient(int p_, int f_, int n_, bool cq)
    : p(p_), f(f_), n(n_), center_quotient(cq) {
    const WittRing& W = WittRing::get(p, 2 * f, std::max((n + 1) / 2 + 1, 3));
    R = QuatRing(W, f, n);
    Fq2 = W.k;

    // Denominator: the image of Z^1 = 1 + p O_L (L the degree-f subfield),
    // generated by 1 + p [lam] over an F_p-basis of F_q.
    denom.clear();
    if (center_quotient) {
        std::vector<QuatElem> zgens;
        auto sub = Fq2->subfield(f);  // F_q inside F_{q^2}
        for (auto lam : sub) {
            if (lam == 0) continue;
            zgens.push_back(R.one_plus_p_teich(lam));
        }
        // closure
        std::unordered_map<std::uint64_t, int> dseen;
        std::deque<QuatElem> work;
        QuatElem e = R.one();
        denom.push_back(e);
        dseen.emplace(R.encode(e), 0);
        work.push_back(e);
        while (!work.empty()) {
            QuatElem x = work.front();
            work.pop_front();
            for (const auto& g : zgens) {
                QuatElem y = R.mul(x, g);
                auto key = R.encode(y);
                if (dseen.count(key)) continue;
                dseen.emplace(key, (int)denom.size());
                denom.push_back(y);
                work.push_back(y);
            }
        }
    } else {
        denom.push_back(R.one());
    }

    // Enumerate U^1/U^n: x = 1 + p s with s mod p^{ca-1}, y mod p^{cb}.
    const WittRing& Wr = *R.W;
    int dg = Wr.deg;
    auto enum_digits = [&](int prec) {
        // all ONElems with digits < p^prec
        std::vector<ONElem> out;
        std::int64_t pm = 1;
        for (int i = 0; i < prec; ++i) pm *= p;
        std::vector<std::int64_t> d(dg, 0);
        while (true) {
            ONElem e = Wr.zero();
            for (int i = 0; i < dg; ++i) e.c[i] = d[i];
            out.push_back(e);
            int i = 0;
            while (i < dg && ++d[i] == pm) d[i++] = 0;
            if (i == dg) break;
        }
        return out;
    };
    auto xs = enum_digits(R.ca - 1);
    auto ys = enum_digits(R.cb);
    elems.clear();
    id_of_key_.clear();
    for (const auto& s : xs) {
        ONElem xpart = Wr.add(Wr.one(), Wr.mul_p(s, 1));
        for (const auto& y : ys) {
            QuatElem u = R.canon(QuatElem{xpart, y});
            // canonical key = min over denominator coset
            std::uint64_t best = ~0ull;
            for (const auto& z : denom) {
                std::uint64_t k = R.encode(R.mul(u, z));
                if (k < best) best = k;
            }
            if (id_of_key_.count(best)) continue;
            // store the canonical representative (the one achieving min key)
            QuatElem rep = u;
            for (const auto& z : denom) {
                QuatElem uz = R.mul(u, z);
                if (R.encode(uz) == best) { rep = uz; break; }
            }
            id_of_key_.emplace(best, (int)elems.size());
            elems.push_back(rep);
        }
    }

    // Generators 1 + varpi [g^i], i < 2f (an F_p-basis of F_{q^2}).  Without
    // the center quotient the Frattini quotient also sees U^2/U^3, so the
    // central 1 + p [g^i] are needed as generators too.
    gens.clear();
    for (int i = 0; i < 2 * f; ++i) gens.push_back(R.one_plus_wpi_teich(Fq2->pow(Fq2->gen(), i)));
    if (!center_quotient && n >= 3)
        for (int i = 0; i < 2 * f; ++i) gens.push_back(R.one_plus_p_teich(Fq2->pow(Fq2->gen(), i)));

    gen_perm.assign(gens.size(), {});
    for (size_t g = 0; g < gens.size(); ++g) {
        gen_perm[g].resize(elems.size());
        for (size_t i = 0; i < elems.size(); ++i)
            gen_perm[g][i] = id(R.mul(gens[g], elems[i]));
    }

    QuatElem tg = R.teich(Fq2->gen());
    QuatElem tginv = R.inv(tg);
    conj_torus.resize(elems.size());
    inv_perm.resize(elems.size());
    for (size_t i = 0; i < elems.size(); ++i) {
        conj_torus[i] = id(R.mul(R.mul(tg, elems[i]), tginv));
        inv_perm[i] = id(R.inv(elems[i]));
    }

    omega2.resize(elems.size());
    for (size_t i = 0; i < elems.size(); ++i) {
        int best = 0;
        for (const auto& z : denom) {
            QuatElem uz = R.mul(elems[i], z);
            QuatElem um1{Wr.sub(uz.x, Wr.one()), uz.y};
            int v = R.vD(um1);
            if (v > best) best = v;
        }
        omega2[i] = best;  // = 2*omega-tilde; equals n iff trivial in truncation
    }
}

int QuatQuotient::id(const QuatElem& u) const {
    std::uint64_t best = ~0ull;
    for (const auto& z : denom) {
        std::uint64_t k = R.encode(R.mul(u, z));
        if (k < best) best = k;
    }
    auto it = id_of_key_.find(best);
    if (it == id_of_key_.end()) throw std::runtime_error("QuatQuotient::id: element outside group");
    return it->second;
}

int QuatQuotient::mul_ids(int a, int b) const { return id(R.mul(elems[a], elems[b])); }

const QuatQuotient& QuatQuotient::get(int p, int f, int n, bool center_quotient) {
    static std::map<std::tuple<int, int, int, bool>, QuatQuotient*> cache;
    static std::mutex mx;
    std::lock_guard<std::mutex> lk(mx);
    auto key = std::make_tuple(p, f, n, center_quotient);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, new QuatQuotient(p, f, n, center_quotient)).first;
    return *it->second;
}

// ---------------------------------------------------------------------------

DualFiltration::DualFiltration(const QuatQuotient& q) : P(&q), F(q.Fq2) {
    cnt_ = {0};  // dim S_0 = 0
    // S_1 = constants
    std::vector<FqField::Elem> ones(P->size(), F->one());
    add_(std::move(ones));
    cnt_.push_back(1);
}

int DualFiltration::reduce_(std::vector<FqField::Elem>& v) const {
    for (size_t b = 0; b < fn_.size(); ++b) {
        FqField::Elem x = v[piv_[b]];
        if (x == 0) continue;
        const auto& w = fn_[b];
        for (size_t i = 0; i < v.size(); ++i) v[i] = F->sub(v[i], F->mul(x, w[i]));
    }
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) return (int)i;
    return -1;
}

bool DualFiltration::add_(std::vector<FqField::Elem> v) {
    // forward-only echelon: the first cnt_[k] vectors must keep spanning S_k,
    // so later additions never modify earlier basis functions
    int pv = reduce_(v);
    if (pv < 0) return false;
    FqField::Elem d = F->inv(v[pv]);
    for (auto& x : v) x = F->mul(x, d);
    fn_.push_back(std::move(v));
    piv_.push_back(pv);
    return true;
}

void DualFiltration::compute_upto(int k) {
    while ((int)cnt_.size() <= k) {
        int kk = (int)cnt_.size() - 1;  // S_kk known, compute S_{kk+1}
        int s = cnt_[kk];
        int ng = (int)P->gens.size();
        int dpar = ng * s;  // parameters: u_j = sum_t c_{j,t} B_t
        size_t n = P->size();

        // Symbolic integration of f over the Cayley graph: node value is a
        // linear form in the parameters.  BFS from the identity.
        int id_e = P->id(P->R.one());
        std::vector<std::vector<FqField::Elem>> nodeval(n);
        std::vector<char> visited(n, 0);
        std::deque<int> bfs;
        nodeval[id_e].assign(dpar, 0);
        visited[id_e] = 1;
        bfs.push_back(id_e);
        // collect constraints from non-tree edges
        std::vector<std::vector<FqField::Elem>> cons;   // echelonized rows
        std::vector<int> cons_piv;
        auto add_constraint = [&](std::vector<FqField::Elem> row) {
            for (size_t b = 0; b < cons.size(); ++b) {
                FqField::Elem x = row[cons_piv[b]];
                if (x == 0) continue;
                for (int i = 0; i < dpar; ++i) row[i] = F->sub(row[i], F->mul(x, cons[b][i]));
            }
            int pv = -1;
            for (int i = 0; i < dpar; ++i)
                if (row[i] != 0) { pv = i; break; }
            if (pv < 0) return;
            FqField::Elem d = F->inv(row[pv]);
            for (auto& x : row) x = F->mul(x, d);
            cons.push_back(std::move(row));
            cons_piv.push_back(pv);
        };

        while (!bfs.empty()) {
            int x = bfs.front();
            bfs.pop_front();
            for (int j = 0; j < ng; ++j) {
                int y = P->gen_perm[j][x];
                // edge value u_j(x) = sum_t c_{j,t} B_t(x)
                if (!visited[y]) {
                    nodeval[y] = nodeval[x];
                    for (int t = 0; t < s; ++t) {
                        FqField::Elem bt = fn_[t][x];
                        if (bt != 0)
                            nodeval[y][j * s + t] = F->add(nodeval[y][j * s + t], bt);
                    }
                    visited[y] = 1;
                    bfs.push_back(y);
                } else {
                    // constraint: f(y) - f(x) - u_j(x) = 0
                    std::vector<FqField::Elem> row(dpar, 0);
                    bool nonzero = false;
                    for (int i = 0; i < dpar; ++i) {
                        row[i] = F->sub(nodeval[y][i], nodeval[x][i]);
                        if (row[i] != 0) nonzero = true;
                    }
                    for (int t = 0; t < s; ++t) {
                        FqField::Elem bt = fn_[t][x];
                        if (bt != 0) {
                            row[j * s + t] = F->sub(row[j * s + t], bt);
                            nonzero = true;
                        }
                    }
                    if (nonzero) add_constraint(std::move(row));
                }
            }
        }

        // Back-substitute so every pivot column is cleared in other rows.
        for (size_t b = 0; b < cons.size(); ++b) {
            for (size_t b2 = 0; b2 < cons.size(); ++b2) {
                if (b2 == b) continue;
                FqField::Elem x = cons[b2][cons_piv[b]];
                if (x == 0) continue;
                for (int i = 0; i < dpar; ++i)
                    cons[b2][i] = F->sub(cons[b2][i], F->mul(x, cons[b][i]));
            }
        }

        for (size_t x = 0; x < n; ++x)
            if (!visited[x])
                throw std::runtime_error("DualFiltration: generators do not generate (Cayley graph disconnected)");

        // Nullspace of the constraint rows = valid parameter tuples.
        // Free coordinates: those not pivots of cons.
        std::vector<char> is_piv(dpar, 0);
        for (int c : cons_piv) is_piv[c] = 1;
        std::vector<std::vector<FqField::Elem>> params;
        for (int c = 0; c < dpar; ++c) {
            if (is_piv[c]) continue;
            std::vector<FqField::Elem> v(dpar, 0);
            v[c] = 1;
            for (size_t b = 0; b < cons.size(); ++b) {
                // cons row: pivot coordinate = - sum free parts
                FqField::Elem coef = cons[b][c];
                if (coef != 0) v[cons_piv[b]] = F->neg(coef);
            }
            params.push_back(std::move(v));
        }

        // Integrate each parameter tuple into an actual function.
        for (const auto& par : params) {
            std::vector<FqField::Elem> fval(n, 0);
            for (size_t x = 0; x < n; ++x) {
                FqField::Elem acc = 0;
                for (int i = 0; i < dpar; ++i)
                    if (nodeval[x][i] != 0 && par[i] != 0)
                        acc = F->add(acc, F->mul(nodeval[x][i], par[i]));
                fval[x] = acc;
            }
            add_(std::move(fval));
        }
        cnt_.push_back((int)fn_.size());
    }
}

FqField::Elem DualFiltration::pair(int b, const GroupAlgElt& v) const {
    FqField::Elem acc = 0;
    for (const auto& [idx, coef] : v) acc = F->add(acc, F->mul(coef, fn_[b][idx]));
    return acc;
}

bool DualFiltration::in_mk(const GroupAlgElt& v, int k) {
    compute_upto(k);
    for (int b = 0; b < cnt_[k]; ++b)
        if (pair(b, v) != 0) return false;
    return true;
}

std::vector<FqField::Elem> DualFiltration::grade_coords(const GroupAlgElt& v, int k) {
    compute_upto(k + 1);
    std::vector<FqField::Elem> out;
    for (int b = cnt_[k]; b < cnt_[k + 1]; ++b) out.push_back(pair(b, v));
    return out;
}

std::vector<std::vector<FqField::Elem>> DualFiltration::perm_matrix_on_S(
    const std::vector<int>& perm, int k) {
    compute_upto(k);
    int d = cnt_[k];
    size_t n = P->size();
    std::vector<std::vector<FqField::Elem>> M(d, std::vector<FqField::Elem>(d, 0));
    for (int j = 0; j < d; ++j) {
        // pullback: (f . perm)(x) = f(perm(x))
        std::vector<FqField::Elem> g(n);
        for (size_t x = 0; x < n; ++x) g[x] = fn_[j][perm[x]];
        // express in the echelon basis
        for (int b = 0; b < d; ++b) {
            FqField::Elem c = g[piv_[b]];
            M[b][j] = c;
            if (c != 0)
                for (size_t i = 0; i < n; ++i) g[i] = F->sub(g[i], F->mul(c, fn_[b][i]));
        }
        for (size_t i = 0; i < n; ++i)
            if (g[i] != 0) throw std::runtime_error("perm_matrix_on_S: basis not stable");
    }
    return M;
}

std::vector<long long> DualFiltration::grade_eigchars(int i) {
    compute_upto(i + 1);
    // Action of conjugation by [g] on S_{i+1}/S_i; the grade itself carries
    // the inverse exponents.
    auto M = perm_matrix_on_S(P->conj_torus, i + 1);
    int lo = cnt_[i], hi = cnt_[i + 1];
    int d = hi - lo;
    // block of the quotient action (rows/cols beyond cnt_[i]); S_i is stable
    // so the lower-left block vanishes.
    std::vector<std::vector<FqField::Elem>> B(d, std::vector<FqField::Elem>(d));
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) B[a][b] = M[lo + a][lo + b];
    long long q21 = F->q - 1;
    std::vector<long long> out;
    // eigenvalues are roots of unity in F; count kernels of (B - w I)
    for (long long e = 0; e < q21; ++e) {
        FqField::Elem w = F->from_dlog(e);
        // rank of B - w I
        std::vector<std::vector<FqField::Elem>> C = B;
        for (int a = 0; a < d; ++a) C[a][a] = F->sub(C[a][a], w);
        int rank = 0;
        for (int col = 0; col < d && rank < d; ++col) {
            int pr = -1;
            for (int r = rank; r < d; ++r)
                if (C[r][col] != 0) { pr = r; break; }
            if (pr < 0) continue;
            std::swap(C[pr], C[rank]);
            FqField::Elem dinv = F->inv(C[rank][col]);
            for (int j2 = col; j2 < d; ++j2) C[rank][j2] = F->mul(C[rank][j2], dinv);
            for (int r = 0; r < d; ++r) {
                if (r == rank || C[r][col] == 0) continue;
                FqField::Elem t = C[r][col];
                for (int j2 = col; j2 < d; ++j2)
                    C[r][j2] = F->sub(C[r][j2], F->mul(t, C[rank][j2]));
            }
            ++rank;
        }
        int mult = d - rank;
        // dual flip: eigenvalue w on the S-quotient means w^{-1} = exponent -e
        // on the grade; report the grade-side exponent.
        for (int m = 0; m < mult; ++m) out.push_back(((-e) % q21 + q21) % q21);
    }
    if ((int)out.size() != d) throw std::runtime_error("grade_eigchars: action not semisimple");
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace tamelat

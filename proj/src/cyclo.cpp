#include "tamelat/cyclo.hpp"

#include <climits>
#include <map>
#include <mutex>
#include <stdexcept>

namespace tamelat {

namespace {

// Cyclotomic polynomials by the recursive quotient x^n - 1 / prod_{d|n, d<n} Phi_d.
std::vector<long long> cyclotomic(int n, std::map<int, std::vector<long long>>& memo) {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    std::vector<long long> num(n + 1, 0);
    num[0] = -1;
    num[n] = 1;
    for (int d = 1; d < n; ++d) {
        if (n % d) continue;
        auto phid = cyclotomic(d, memo);
        // divide num by phid (exact, monic divisor)
        std::vector<long long> quo(num.size() - phid.size() + 1, 0);
        std::vector<long long> rem = num;
        for (int i = (int)quo.size() - 1; i >= 0; --i) {
            long long c = rem[i + phid.size() - 1];
            quo[i] = c;
            if (!c) continue;
            for (size_t j = 0; j < phid.size(); ++j) rem[i + j] -= c * phid[j];
        }
        for (auto v : rem)
            if (v) throw std::runtime_error("cyclotomic: inexact division");
        num = quo;
    }
    memo[n] = num;
    return num;
}

}  // namespace

CycloField::CycloField(int n_) : n(n_) {
    static std::map<int, std::vector<long long>> memo;
    cyclopoly = cyclotomic(n, memo);
    phi = (int)cyclopoly.size() - 1;

    // zeta^i for i < 2*phi-1, reduced mod Phi_n.
    zred_.assign(2 * phi - 1, std::vector<mpq_class>(phi, 0));
    for (int i = 0; i < phi; ++i) zred_[i][i] = 1;
    for (int i = phi; i < 2 * phi - 1; ++i) {
        // zeta^i = zeta * zeta^{i-1}; shift then reduce the top coefficient.
        std::vector<mpq_class> t(phi + 1, 0);
        for (int j = 0; j < phi; ++j) t[j + 1] = zred_[i - 1][j];
        mpq_class top = t[phi];
        for (int j = 0; j < phi; ++j) t[j] -= top * mpq_class((long)cyclopoly[j]);
        t.resize(phi);
        zred_[i] = t;
    }
}

const CycloField& CycloField::get(int n) {
    static std::map<int, CycloField*> cache;
    static std::mutex mx;
    std::lock_guard<std::mutex> lk(mx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, new CycloField(n)).first;
    return *it->second;
}

CycElem CycloField::zero() const { return CycElem{std::vector<mpq_class>(phi, 0)}; }

CycElem CycloField::one() const {
    CycElem e = zero();
    e.c[0] = 1;
    return e;
}

CycElem CycloField::from_int(long long v) const {
    CycElem e = zero();
    e.c[0] = mpq_class((long)v);
    return e;
}

CycElem CycloField::from_q(const mpq_class& v) const {
    CycElem e = zero();
    e.c[0] = v;
    return e;
}

CycElem CycloField::zeta_pow(long long e) const {
    long long k = ((e % n) + n) % n;
    CycElem r = zero();
    if (k < (long long)phi) {
        r.c[k] = 1;
        return r;
    }
    // zeta^k with phi <= k < n: repeated reduced multiplication via zred_.
    // k < n <= manageable; walk down using zred_ table on the fly.
    // Represent zeta^k = zeta^{phi-1} * zeta^{k-phi+1} iteratively.
    r.c[phi - 1] = 1;
    long long left = k - (phi - 1);
    while (left > 0) {
        // multiply by zeta once
        std::vector<mpq_class> t(phi, 0);
        for (int j = 0; j < phi; ++j) {
            if (r.c[j] == 0) continue;
            // zeta^{j+1}
            const auto& zr = zred_[j + 1];
            for (int i = 0; i < phi; ++i) t[i] += r.c[j] * zr[i];
        }
        r.c = t;
        --left;
    }
    return r;
}

CycElem CycloField::add(const CycElem& a, const CycElem& b) const {
    CycElem r = a;
    for (int i = 0; i < phi; ++i) r.c[i] += b.c[i];
    return r;
}

CycElem CycloField::sub(const CycElem& a, const CycElem& b) const {
    CycElem r = a;
    for (int i = 0; i < phi; ++i) r.c[i] -= b.c[i];
    return r;
}

CycElem CycloField::neg(const CycElem& a) const {
    CycElem r = a;
    for (int i = 0; i < phi; ++i) r.c[i] = -r.c[i];
    return r;
}

CycElem CycloField::mul(const CycElem& a, const CycElem& b) const {
    std::vector<mpq_class> t(2 * phi - 1, 0);
    for (int i = 0; i < phi; ++i) {
        if (a.c[i] == 0) continue;
        for (int j = 0; j < phi; ++j) {
            if (b.c[j] == 0) continue;
            t[i + j] += a.c[i] * b.c[j];
        }
    }
    CycElem r = zero();
    for (int s = 0; s < 2 * phi - 1; ++s) {
        if (t[s] == 0) continue;
        const auto& zr = zred_[s];
        for (int i = 0; i < phi; ++i) r.c[i] += t[s] * zr[i];
    }
    return r;
}

CycElem CycloField::inv(const CycElem& a) const {
    if (is_zero(a)) throw std::runtime_error("CycloField::inv(0)");
    // Solve a*x = 1 as a phi x phi rational linear system (columns = a*zeta^j).
    int m = phi;
    std::vector<std::vector<mpq_class>> M(m, std::vector<mpq_class>(m + 1, 0));
    for (int j = 0; j < m; ++j) {
        CycElem col = mul(a, zeta_pow(j));
        for (int i = 0; i < m; ++i) M[i][j] = col.c[i];
    }
    M[0][m] = 1;
    // Gaussian elimination
    for (int col = 0, row = 0; col < m && row < m; ++col) {
        int pr = -1;
        for (int i = row; i < m; ++i)
            if (M[i][col] != 0) { pr = i; break; }
        if (pr < 0) throw std::runtime_error("CycloField::inv: singular");
        std::swap(M[pr], M[row]);
        mpq_class d = M[row][col];
        for (int j = col; j <= m; ++j) M[row][j] /= d;
        for (int i = 0; i < m; ++i) {
            if (i == row || M[i][col] == 0) continue;
            mpq_class f = M[i][col];
            for (int j = col; j <= m; ++j) M[i][j] -= f * M[row][j];
        }
        ++row;
    }
    CycElem x = zero();
    for (int j = 0; j < m; ++j) x.c[j] = M[j][m];
    return x;
}

bool CycloField::is_zero(const CycElem& a) const {
    for (const auto& v : a.c)
        if (v != 0) return false;
    return true;
}

int CycloField::content_val_p(const CycElem& a, int p) const {
    int best = INT_MAX;
    for (const auto& v : a.c) {
        if (v == 0) continue;
        int w = 0;
        mpz_class num = v.get_num(), den = v.get_den();
        while (mpz_divisible_ui_p(num.get_mpz_t(), p)) { num /= p; ++w; }
        while (mpz_divisible_ui_p(den.get_mpz_t(), p)) { den /= p; --w; }
        if (w < best) best = w;
    }
    return best;
}

ONElem CycloField::reduce(const CycElem& a, const WittRing& W) const {
    if (W.k->q - 1 != n) throw std::runtime_error("CycloField::reduce: ring mismatch");
    int v = content_val_p(a, W.p);
    if (v == INT_MAX) return W.zero();
    // Clear a power of p so coefficients are p-integral, map, then restore.
    mpz_class pk = 1;
    int shift = v < 0 ? -v : 0;
    for (int i = 0; i < shift; ++i) pk *= W.p;
    ONElem t = W.teich(W.k->gen());
    ONElem acc = W.zero(), zp = W.one();
    mpz_class pNz(W.pN);
    for (int i = 0; i < phi; ++i) {
        if (a.c[i] != 0) {
            mpq_class scaled = a.c[i] * mpq_class(pk);
            mpz_class num = scaled.get_num(), den = scaled.get_den();
            // den is prime to p now; invert it mod p^N
            mpz_class deninv;
            if (mpz_invert(deninv.get_mpz_t(), den.get_mpz_t(), pNz.get_mpz_t()) == 0)
                throw std::runtime_error("CycloField::reduce: denominator not invertible");
            mpz_class r = (num % pNz) * deninv % pNz;
            if (r < 0) r += pNz;
            std::int64_t ri = (std::int64_t)r.get_si();
            ONElem term = zp;
            for (int j = 0; j < W.deg; ++j) term.c[j] = term.c[j] * ri % W.pN;
            acc = W.add(acc, term);
        }
        zp = W.mul(zp, t);
    }
    if (shift > 0) {
        int w = W.val(acc);
        if (w < shift) throw CycloReduceError{shift - w};
        acc = W.div_p(acc, shift);
        // the result is only defined mod p^{N-shift}; keep it canonical there
        acc = W.mod_p(acc, W.N - shift);
    }
    return acc;
}

int CycloField::val_p(const CycElem& a, const WittRing& W) const {
    if (is_zero(a)) return INT_MAX;
    int v = content_val_p(a, W.p);
    CycElem unitpart = a;
    if (v != 0) {
        mpq_class pk = 1;
        for (int i = 0; i < (v > 0 ? v : -v); ++i) pk *= W.p;
        for (auto& c : unitpart.c) c = (v > 0) ? mpq_class(c / pk) : mpq_class(c * pk);
    }
    ONElem img = reduce(unitpart, W);
    return v + W.val(img);
}

}  // namespace tamelat

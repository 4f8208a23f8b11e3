#include "tamelat/witt.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace tamelat {

std::int64_t WittRing::mod_(std::int64_t v) const {
    v %= pN;
    if (v < 0) v += pN;
    return v;
}

WittRing::WittRing(int p_, int deg_, int N_) : p(p_), deg(deg_), N(N_) {
    k = &FqField::get(p, deg);
    pN = 1;
    for (int i = 0; i < N; ++i) {
        if (pN > (std::int64_t)3037000498 / p) throw std::runtime_error("WittRing: modulus overflow");
        pN *= p;
    }
    m0_.assign(deg, 0);
    for (int i = 0; i < deg; ++i) m0_[i] = k->minpoly[i];

    // Powers u^i reduced mod (m0, p^N), for schoolbook products.
    upow_.assign(2 * deg - 1, ONElem{std::vector<std::int64_t>(deg, 0)});
    for (int i = 0; i < deg; ++i) upow_[i].c[i] = 1;
    for (int i = deg; i < 2 * deg - 1; ++i) {
        // u^i = u * u^{i-1}, then reduce the top term by m0.
        std::vector<std::int64_t> t(deg + 1, 0);
        for (int j = 0; j < deg; ++j) t[j + 1] = upow_[i - 1].c[j];
        std::int64_t top = t[deg];
        for (int j = 0; j < deg; ++j) t[j] = mod_(t[j] - (top % pN) * m0_[j] % pN);
        t.resize(deg);
        upow_[i].c = t;
    }

    // Teichmueller lift of the generator: iterate y -> y^q from y = u.
    ONElem y; y.c.assign(deg, 0);
    if (deg == 1) y.c[0] = mod_(-m0_[0]); else y.c[1] = 1;
    for (int it = 0; it < N + 1; ++it) y = pow(y, k->q);
    // teich table via powers of y (and 0).
    teich_.assign(k->q, zero());
    ONElem acc = one();
    long long q1 = k->q - 1;
    for (long long e = 0; e < q1; ++e) {
        teich_[k->from_dlog(e)] = acc;
        acc = mul(acc, y);
    }

    // Frobenius: sigma(u) = Newton root of m0 congruent to u^p mod p.
    ONElem s = pow(upow_[1], p);
    for (int it = 0; it < N + 2; ++it) {
        std::vector<ONElem> sp(deg + 1);
        sp[0] = one();
        for (int i = 1; i <= deg; ++i) sp[i] = mul(sp[i - 1], s);
        ONElem num = sp[deg], den = zero();  // m0 monic
        for (int i = 0; i < deg; ++i) {
            ONElem t = sp[i];
            for (int j = 0; j < deg; ++j) t.c[j] = mod_(t.c[j] * (m0_[i] % pN) % pN);
            num = add(num, t);
        }
        for (int i = 1; i <= deg; ++i) {
            std::int64_t ci = (i < deg) ? m0_[i] : 1;
            std::int64_t coef = mod_((std::int64_t)i * (ci % pN) % pN);
            ONElem t = sp[i - 1];
            for (int j = 0; j < deg; ++j) t.c[j] = mod_(t.c[j] * coef % pN);
            den = add(den, t);
        }
        s = sub(s, mul(num, inv(den)));
    }
    frobu_pow_.assign(deg, zero());
    frobu_pow_[0] = one();
    for (int i = 1; i < deg; ++i) frobu_pow_[i] = mul(frobu_pow_[i - 1], s);

    // sanity: sigma is an involution iteration of order deg on u, and fixes teich structure
    ONElem chk = upow_[1];
    for (int i = 0; i < deg; ++i) chk = frob(chk);
    if (!(chk == upow_[1])) throw std::runtime_error("WittRing: Frobenius lift inconsistent");
}

const WittRing& WittRing::get(int p, int deg, int N) {
    static std::map<std::tuple<int, int, int>, WittRing*> cache;
    static std::mutex mx;
    std::lock_guard<std::mutex> lk(mx);
    auto key = std::make_tuple(p, deg, N);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, new WittRing(p, deg, N)).first;
    return *it->second;
}

ONElem WittRing::zero() const { return ONElem{std::vector<std::int64_t>(deg, 0)}; }

ONElem WittRing::one() const {
    ONElem e = zero();
    e.c[0] = 1;
    return e;
}

ONElem WittRing::from_int(std::int64_t v) const {
    ONElem e = zero();
    e.c[0] = mod_(v);
    return e;
}

ONElem WittRing::add(const ONElem& a, const ONElem& b) const {
    ONElem r = zero();
    for (int i = 0; i < deg; ++i) r.c[i] = mod_(a.c[i] + b.c[i]);
    return r;
}

ONElem WittRing::sub(const ONElem& a, const ONElem& b) const {
    ONElem r = zero();
    for (int i = 0; i < deg; ++i) r.c[i] = mod_(a.c[i] - b.c[i]);
    return r;
}

ONElem WittRing::neg(const ONElem& a) const {
    ONElem r = zero();
    for (int i = 0; i < deg; ++i) r.c[i] = mod_(-a.c[i]);
    return r;
}

ONElem WittRing::mul(const ONElem& a, const ONElem& b) const {
    std::vector<std::int64_t> t(2 * deg - 1, 0);
    for (int i = 0; i < deg; ++i) {
        if (!a.c[i]) continue;
        for (int j = 0; j < deg; ++j) t[i + j] = (t[i + j] + a.c[i] * b.c[j]) % pN;
    }
    ONElem r = zero();
    for (int s = 0; s < 2 * deg - 1; ++s) {
        if (!t[s]) continue;
        for (int j = 0; j < deg; ++j) r.c[j] = mod_(r.c[j] + t[s] * upow_[s].c[j] % pN);
    }
    return r;
}

ONElem WittRing::pow(const ONElem& a, long long e) const {
    if (e < 0) return pow(inv(a), -e);
    ONElem r = one(), b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

bool WittRing::is_zero(const ONElem& a) const {
    for (auto v : a.c)
        if (v) return false;
    return true;
}

FqField::Elem WittRing::reduce(const ONElem& a) const {
    std::vector<int> d(deg);
    for (int i = 0; i < deg; ++i) d[i] = (int)(a.c[i] % p);
    return k->from_digits(d);
}

ONElem WittRing::teich(FqField::Elem x) const { return teich_[x]; }

ONElem WittRing::frob(const ONElem& a) const {
    ONElem r = zero();
    for (int i = 0; i < deg; ++i) {
        if (!a.c[i]) continue;
        for (int j = 0; j < deg; ++j) r.c[j] = mod_(r.c[j] + a.c[i] * frobu_pow_[i].c[j] % pN);
    }
    return r;
}

ONElem WittRing::frob_iter(const ONElem& a, int j) const {
    ONElem r = a;
    for (int i = 0; i < j; ++i) r = frob(r);
    return r;
}

int WittRing::val(const ONElem& a) const {
    int v = N;
    for (int i = 0; i < deg; ++i) {
        if (!a.c[i]) continue;
        int w = 0;
        std::int64_t x = a.c[i];
        while (x % p == 0) { x /= p; ++w; }
        if (w < v) v = w;
    }
    return v;
}

ONElem WittRing::inv(const ONElem& a) const {
    FqField::Elem r0 = reduce(a);
    if (r0 == 0) throw std::runtime_error("WittRing::inv: not a unit");
    // lift the residue inverse by Newton: y <- y(2 - a y)
    ONElem y = teich(k->inv(r0));
    for (int it = 0; it < N + 1; ++it) {
        ONElem t = sub(add(one(), one()), mul(a, y));
        y = mul(y, t);
    }
    return y;
}

ONElem WittRing::sqrt1p(const ONElem& a) const {
    if (reduce(a) != k->one()) throw std::runtime_error("WittRing::sqrt1p: not 1 mod p");
    ONElem y = one();
    ONElem half = inv(from_int(2));
    for (int it = 0; it < N + 2; ++it) y = mul(add(y, mul(a, inv(y))), half);
    if (!(mul(y, y) == a)) throw std::runtime_error("WittRing::sqrt1p: iteration failed");
    return y;
}

ONElem WittRing::div_p(const ONElem& a, int kk) const {
    ONElem r = zero();
    std::int64_t pk = 1;
    for (int i = 0; i < kk; ++i) pk *= p;
    for (int i = 0; i < deg; ++i) {
        if (a.c[i] % pk != 0) throw std::runtime_error("WittRing::div_p: not divisible");
        r.c[i] = a.c[i] / pk;
    }
    return r;
}

ONElem WittRing::mul_p(const ONElem& a, int kk) const {
    ONElem r = zero();
    std::int64_t pk = 1;
    for (int i = 0; i < kk; ++i) pk *= p;
    for (int i = 0; i < deg; ++i) r.c[i] = mod_(a.c[i] * (pk % pN));
    return r;
}

ONElem WittRing::mod_p(const ONElem& a, int m) const {
    std::int64_t pm = 1;
    for (int i = 0; i < m; ++i) pm *= p;
    ONElem r = zero();
    for (int i = 0; i < deg; ++i) r.c[i] = ((a.c[i] % pm) + pm) % pm;
    return r;
}

std::uint64_t WittRing::encode_mod(const ONElem& a, int m) const {
    std::int64_t pm = 1;
    for (int i = 0; i < m; ++i) pm *= p;
    std::uint64_t code = 0;
    for (int i = deg - 1; i >= 0; --i) code = code * (std::uint64_t)pm + (std::uint64_t)(((a.c[i] % pm) + pm) % pm);
    return code;
}

}  // namespace tamelat

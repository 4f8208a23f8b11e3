#include "tamelat/fq.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace tamelat {

namespace {

// Multiply two polynomials of degree < deg modulo (m, p).
std::vector<int> polmulmod(const std::vector<int>& a, const std::vector<int>& b,
                           const std::vector<int>& m, int p, int deg) {
    std::vector<int> t(2 * deg - 1, 0);
    for (int i = 0; i < deg; ++i)
        for (int j = 0; j < deg; ++j) t[i + j] = (t[i + j] + a[i] * b[j]) % p;
    for (int k = 2 * deg - 2; k >= deg; --k) {
        int c = t[k];
        if (!c) continue;
        t[k] = 0;
        // x^k = x^{k-deg} * x^deg = -x^{k-deg} * sum m[i] x^i
        for (int i = 0; i < deg; ++i)
            t[k - deg + i] = ((t[k - deg + i] - c * m[i]) % p + p * p) % p;
    }
    t.resize(deg);
    return t;
}

long long encode(const std::vector<int>& d, int p) {
    long long c = 0;
    for (int i = (int)d.size() - 1; i >= 0; --i) c = c * p + d[i];
    return c;
}

std::vector<int> decode(long long code, int p, int deg) {
    std::vector<int> d(deg);
    for (int i = 0; i < deg; ++i) { d[i] = (int)(code % p); code /= p; }
    return d;
}

// Order of the class of x in (F_p[x]/m)^x, or 0 if x is a zero divisor.
long long order_of_x(const std::vector<int>& m, int p, int deg) {
    std::vector<int> x(deg, 0), acc;
    if (deg == 1) x[0] = (p - m[0]) % p; else x[1] = 1;
    acc = x;
    long long q1 = 1;
    for (int i = 0; i < deg; ++i) q1 *= p;
    for (long long k = 1; k < q1; ++k) {
        bool is_one = acc[0] == 1, is_zero = acc[0] == 0;
        for (int i = 1; i < deg; ++i) {
            if (acc[i] != 0) { is_one = false; is_zero = false; }
        }
        if (is_zero) return 0;
        if (is_one) return k;
        acc = polmulmod(acc, x, m, p, deg);
    }
    return 0;
}

}  // namespace

FqField::FqField(int p_, int deg_) : p(p_), deg(deg_) {
    long long qq = 1;
    for (int i = 0; i < deg; ++i) qq *= p;
    if (qq > 65535) throw std::runtime_error("FqField: field too large");
    q = (int)qq;

    // First monic polynomial (low digits first) making x a generator of F_q^x.
    long long q1 = q - 1;
    minpoly.assign(deg, 0);
    bool found = false;
    for (long long code = 0; code < q && !found; ++code) {
        std::vector<int> m = decode(code, p, deg);
        if (order_of_x(m, p, deg) == q1) { minpoly = m; found = true; }
    }
    if (!found) throw std::runtime_error("FqField: no primitive polynomial found");

    // Exp/log tables from powers of x.
    exp_.assign(q1, 0);
    log_.assign(q, -1);
    std::vector<int> x(deg, 0), acc(deg, 0);
    if (deg == 1) x[0] = (p - minpoly[0]) % p; else x[1] = 1;
    acc[0] = 1;
    for (long long k = 0; k < q1; ++k) {
        Elem e = (Elem)encode(acc, p);
        exp_[k] = e;
        log_[e] = (int)k;
        acc = polmulmod(acc, x, minpoly, p, deg);
    }
    gen_ = exp_[1 % q1];

    add_.assign((size_t)q * q, 0);
    mul_.assign((size_t)q * q, 0);
    neg_.assign(q, 0);
    frob_.assign(q, 0);
    for (int a = 0; a < q; ++a) {
        auto da = decode(a, p, deg);
        std::vector<int> na(deg);
        for (int i = 0; i < deg; ++i) na[i] = (p - da[i]) % p;
        neg_[a] = (Elem)encode(na, p);
        for (int b = 0; b < q; ++b) {
            auto db = decode(b, p, deg);
            std::vector<int> s(deg);
            for (int i = 0; i < deg; ++i) s[i] = (da[i] + db[i]) % p;
            add_[(size_t)a * q + b] = (Elem)encode(s, p);
        }
    }
    for (int a = 0; a < q; ++a) {
        if (a == 0) continue;
        for (int b = 0; b < q; ++b) {
            if (b == 0) continue;
            long long e = ((long long)log_[a] + log_[b]) % q1;
            mul_[(size_t)a * q + b] = exp_[e];
        }
    }
    for (int a = 1; a < q; ++a) frob_[a] = exp_[((long long)log_[a] * p) % q1];
}

const FqField& FqField::get(int p, int deg) {
    static std::map<std::pair<int, int>, FqField*> cache;
    static std::mutex mx;
    std::lock_guard<std::mutex> lk(mx);
    auto key = std::make_pair(p, deg);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, new FqField(p, deg)).first;
    return *it->second;
}

FqField::Elem FqField::inv(Elem a) const {
    if (a == 0) throw std::runtime_error("FqField::inv(0)");
    long long q1 = q - 1;
    return exp_[(q1 - log_[a]) % q1];
}

FqField::Elem FqField::pow(Elem a, long long e) const {
    if (a == 0) {
        if (e <= 0) throw std::runtime_error("FqField::pow(0, e<=0)");
        return 0;
    }
    long long q1 = q - 1;
    long long k = ((log_[a] * (e % q1)) % q1 + q1) % q1;
    return exp_[k];
}

FqField::Elem FqField::from_dlog(long long e) const {
    long long q1 = q - 1;
    return exp_[((e % q1) + q1) % q1];
}

FqField::Elem FqField::frob_iter(Elem a, int j) const {
    Elem r = a;
    for (int i = 0; i < j; ++i) r = frob_[r];
    return r;
}

FqField::Elem FqField::from_int(long long v) const {
    long long r = v % p;
    if (r < 0) r += p;
    return (Elem)r;
}

std::vector<int> FqField::digits(Elem a) const { return decode(a, p, deg); }

FqField::Elem FqField::from_digits(const std::vector<int>& d) const {
    std::vector<int> dd(deg, 0);
    for (int i = 0; i < deg && i < (int)d.size(); ++i) dd[i] = ((d[i] % p) + p) % p;
    return (Elem)encode(dd, p);
}

std::vector<FqField::Elem> FqField::subfield(int e) const {
    if (deg % e != 0) throw std::runtime_error("FqField::subfield: not a divisor");
    // Fixed points of x -> x^{p^e}.
    std::vector<Elem> out;
    for (int a = 0; a < q; ++a)
        if (frob_iter((Elem)a, e) == (Elem)a) out.push_back((Elem)a);
    return out;
}

}  // namespace tamelat

#pragma once

#include <array>
#include <string>

namespace tamelat {

/// A multiplicative character given by its exponent relative to the fixed
/// generator of the relevant cyclic group (F_{q^2}^x, F_p^x, ...).
struct MultChar {
    long long modulus = 1;  // order of the cyclic group
    long long k = 0;        // exponent, canonical in [0, modulus)

    MultChar() = default;
    MultChar(long long mod, long long e) : modulus(mod), k(((e % mod) + mod) % mod) {}

    MultChar times(const MultChar& o) const { return MultChar(modulus, k + o.k); }
    MultChar inverse() const { return MultChar(modulus, -k); }
    MultChar power(long long e) const { return MultChar(modulus, k * (e % modulus)); }
    /// Frobenius twist chi -> chi^p.
    MultChar frob(int p) const { return MultChar(modulus, k * p); }
    bool operator==(const MultChar& o) const { return modulus == o.modulus && k == o.k; }
    bool operator<(const MultChar& o) const { return k < o.k; }
};

/// A character of H = {diag([a],[d])}: pair of exponents mod p-1,
/// value a^{e[0]} d^{e[1]}.
struct HChar {
    int m = 1;               // p - 1
    std::array<int, 2> e{0, 0};

    HChar() = default;
    HChar(int p1, long long ea, long long ed) : m(p1) {
        e[0] = (int)(((ea % m) + m) % m);
        e[1] = (int)(((ed % m) + m) % m);
    }
    /// chi_{m,n}: diag([a],[d]) -> a^{m+n} d^n.
    static HChar chi(int p, long long mm, long long nn) { return HChar(p - 1, mm + nn, nn); }
    /// conjugate by the Weyl element: swap the two exponents.
    HChar s() const { return HChar(m, e[1], e[0]); }
    HChar times(const HChar& o) const { return HChar(m, e[0] + o.e[0], e[1] + o.e[1]); }
    HChar inverse() const { return HChar(m, -e[0], -e[1]); }
    bool operator==(const HChar& o) const { return m == o.m && e == o.e; }
    bool operator<(const HChar& o) const { return e < o.e; }
    std::string str() const {
        return "(" + std::to_string(e[0]) + "," + std::to_string(e[1]) + ")";
    }
};

}  // namespace tamelat

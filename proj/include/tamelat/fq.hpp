#pragma once

#include <cstdint>
#include <vector>

namespace tamelat {

/// Finite field F_{p^d} realized as F_p[x]/(m(x)).
///
/// The defining polynomial m is the first monic irreducible of degree d
/// (coefficients enumerated low-digit-first) whose root x generates the
/// multiplicative group.  All character exponents and Teichmueller data
/// elsewhere refer to that generator, so every run picks the same one.
///
/// Elements are encoded as base-p digit strings: code = sum c_i p^i.
class FqField {
public:
    int p;        // characteristic
    int deg;      // extension degree d
    int q;        // p^deg
    std::vector<int> minpoly;  // m(x) = x^d + sum minpoly[i] x^i

    static const FqField& get(int p, int deg);

    using Elem = std::uint16_t;

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem gen() const { return gen_; }   // class of x, generates F^x

    Elem add(Elem a, Elem b) const { return add_[a * q + b]; }
    Elem sub(Elem a, Elem b) const { return add_[a * q + neg_[b]]; }
    Elem neg(Elem a) const { return neg_[a]; }
    Elem mul(Elem a, Elem b) const { return mul_[a * q + b]; }
    Elem inv(Elem a) const;
    Elem pow(Elem a, long long e) const;

    bool is_zero(Elem a) const { return a == 0; }

    /// Discrete log base gen(); -1 for zero.
    int dlog(Elem a) const { return log_[a]; }
    /// gen()^e (e taken mod q-1).
    Elem from_dlog(long long e) const;

    /// x^p (arithmetic Frobenius).
    Elem frob(Elem a) const { return frob_[a]; }
    /// x^{p^j}
    Elem frob_iter(Elem a, int j) const;

    /// Embed an integer residue (element of the prime field).
    Elem from_int(long long v) const;

    /// Digits of the encoding, length deg.
    std::vector<int> digits(Elem a) const;
    Elem from_digits(const std::vector<int>& d) const;

    /// Elements of the subfield F_{p^e} (e | deg), sorted by code.
    std::vector<Elem> subfield(int e) const;

private:
    FqField(int p, int deg);
    Elem gen_;
    std::vector<Elem> add_, mul_, neg_, frob_;
    std::vector<int> log_;
    std::vector<Elem> exp_;  // gen^i, i in [0, q-1)
};

/// Field handle for the generic linear algebra templates.
struct FqF {
    const FqField* F = nullptr;
    using Elem = FqField::Elem;
    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem add(Elem a, Elem b) const { return F->add(a, b); }
    Elem sub(Elem a, Elem b) const { return F->sub(a, b); }
    Elem neg(Elem a) const { return F->neg(a); }
    Elem mul(Elem a, Elem b) const { return F->mul(a, b); }
    Elem inv(Elem a) const { return F->inv(a); }
    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }
};

}  // namespace tamelat

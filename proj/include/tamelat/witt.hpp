#pragma once

#include <cstdint>
#include <vector>

#include "tamelat/fq.hpp"

namespace tamelat {

/// An element of O_N = W(F_{p^deg})/p^N, stored as a polynomial of degree
/// < deg in the class of u with coefficients in Z/p^N.
struct ONElem {
    std::vector<std::int64_t> c;
    bool operator==(const ONElem& o) const { return c == o.c; }
    bool operator!=(const ONElem& o) const { return c != o.c; }
};

/// Truncated Witt vectors of F_{p^deg}, realized as (Z/p^N)[u]/(m0(u)) for
/// the monic lift m0 of the defining polynomial of the residue field.  The
/// residue field generator lifts to the distinguished Teichmueller unit.
class WittRing {
public:
    int p, deg, N;
    std::int64_t pN;           // p^N
    const FqField* k;          // residue field F_{p^deg}

    static const WittRing& get(int p, int deg, int N);

    ONElem zero() const;
    ONElem one() const;
    ONElem from_int(std::int64_t v) const;

    ONElem add(const ONElem& a, const ONElem& b) const;
    ONElem sub(const ONElem& a, const ONElem& b) const;
    ONElem neg(const ONElem& a) const;
    ONElem mul(const ONElem& a, const ONElem& b) const;
    ONElem pow(const ONElem& a, long long e) const;

    bool is_zero(const ONElem& a) const;

    /// Reduction to the residue field.
    FqField::Elem reduce(const ONElem& a) const;

    /// Teichmueller lift (the unique multiplicative section).
    ONElem teich(FqField::Elem x) const;

    /// Frobenius lift: the ring automorphism inducing x -> x^p downstairs.
    ONElem frob(const ONElem& a) const;
    /// q-power Frobenius sigma (x -> x^{p^f} downstairs), f = deg/2 halves.
    ONElem frob_iter(const ONElem& a, int j) const;

    /// p-adic valuation in [0, N]; val(0) = N.
    int val(const ONElem& a) const;

    /// Inverse of a unit.
    ONElem inv(const ONElem& a) const;

    /// Square root of an element congruent to 1 mod p (unique such root
    /// that is itself 1 mod p; p odd).
    ONElem sqrt1p(const ONElem& a) const;

    /// Exact division by p^k; throws if val < k.
    ONElem div_p(const ONElem& a, int k) const;
    ONElem mul_p(const ONElem& a, int k) const;

    /// Canonicalize modulo p^m (m <= N).
    ONElem mod_p(const ONElem& a, int m) const;

    /// u-digit encoding for hashing, after reduction mod p^m.
    std::uint64_t encode_mod(const ONElem& a, int m) const;

private:
    explicit WittRing(int p, int deg, int N);
    std::vector<std::int64_t> m0_;    // monic lift of minpoly (length deg)
    std::vector<ONElem> upow_;        // u^i for i < 2*deg-1, reduced
    std::vector<ONElem> frobu_pow_;   // sigma(u)^i for i < deg
    std::vector<ONElem> teich_;       // per residue code
    std::int64_t mod_(std::int64_t v) const;
};

}  // namespace tamelat

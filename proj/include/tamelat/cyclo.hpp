#pragma once

#include <gmpxx.h>

#include <vector>

#include "tamelat/witt.hpp"

namespace tamelat {

/// An element of Q(zeta_n), as a polynomial of degree < phi(n) in zeta
/// with exact rational coefficients, modulo the n-th cyclotomic polynomial.
struct CycElem {
    std::vector<mpq_class> c;
    bool operator==(const CycElem& o) const { return c == o.c; }
};

/// The exact cyclotomic field Q(zeta_n).  The distinguished prime above p
/// is the one under which zeta_n reduces to the fixed generator of the
/// residue field, so reduction maps land in the matching WittRing.
class CycloField {
public:
    int n;                 // root-of-unity order
    int phi;               // degree
    std::vector<long long> cyclopoly;  // Phi_n, monic, low-first, length phi+1

    static const CycloField& get(int n);

    CycElem zero() const;
    CycElem one() const;
    CycElem from_int(long long v) const;
    CycElem from_q(const mpq_class& v) const;
    CycElem zeta_pow(long long e) const;

    CycElem add(const CycElem& a, const CycElem& b) const;
    CycElem sub(const CycElem& a, const CycElem& b) const;
    CycElem neg(const CycElem& a) const;
    CycElem mul(const CycElem& a, const CycElem& b) const;
    CycElem inv(const CycElem& a) const;
    bool is_zero(const CycElem& a) const;
    bool eq(const CycElem& a, const CycElem& b) const { return a == b; }

    /// Valuation of the rational-coefficient content: min over coefficients
    /// of v_p(numerator) - v_p(denominator); INT_MAX for zero.
    int content_val_p(const CycElem& a, int p) const;

    /// Reduce a p-integral element into O_N = W(F_{q^2})/p^N (q^2-1 = n).
    /// Throws CycloReduceError carrying the valuation deficit otherwise.
    ONElem reduce(const CycElem& a, const WittRing& W) const;

    /// p-adic valuation with respect to the distinguished prime (capped by
    /// the precision of W).  Requires W.k->q - 1 == n.
    int val_p(const CycElem& a, const WittRing& W) const;

private:
    explicit CycloField(int n);
    std::vector<std::vector<mpq_class>> zred_;  // zeta^i reduced, i < 2*phi-1
};

struct CycloReduceError {
    int deficit;  // positive: how far below integrality
};

/// Field handle for the linear algebra templates.
struct CycF {
    const CycloField* C = nullptr;
    using Elem = CycElem;
    Elem zero() const { return C->zero(); }
    Elem one() const { return C->one(); }
    Elem add(const Elem& a, const Elem& b) const { return C->add(a, b); }
    Elem sub(const Elem& a, const Elem& b) const { return C->sub(a, b); }
    Elem neg(const Elem& a) const { return C->neg(a); }
    Elem mul(const Elem& a, const Elem& b) const { return C->mul(a, b); }
    Elem inv(const Elem& a) const { return C->inv(a); }
    bool is_zero(const Elem& a) const { return C->is_zero(a); }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
};

}  // namespace tamelat

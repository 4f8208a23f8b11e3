#pragma once

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "tamelat/witt.hpp"

namespace tamelat {

/// x + varpi*y in O_D / varpi^n, with varpi^2 = p and varpi a varpi^{-1} = sigma(a).
struct QuatElem {
    ONElem x, y;
};

/// Arithmetic in the truncated quaternion order O_D/varpi^n over W(F_{q^2}).
struct QuatRing {
    const WittRing* W = nullptr;
    int f = 1;
    int n = 2;       // varpi-adic truncation
    int ca = 1, cb = 1;  // x mod p^ca, y mod p^cb

    QuatRing() = default;
    QuatRing(const WittRing& ring, int ff, int nn);

    ONElem sigma(const ONElem& a) const { return W->frob_iter(a, f); }
    QuatElem canon(const QuatElem& a) const;
    QuatElem one() const;
    QuatElem mul(const QuatElem& a, const QuatElem& b) const;
    QuatElem inv(const QuatElem& a) const;
    bool eq(const QuatElem& a, const QuatElem& b) const;
    std::uint64_t encode(const QuatElem& a) const;

    /// Reduced-norm valuation of a (capped at n; n means 0 in truncation).
    int vD(const QuatElem& a) const;

    QuatElem one_plus_wpi_teich(FqField::Elem lam) const;  // 1 + varpi [lam]
    QuatElem one_plus_p_teich(FqField::Elem lam) const;    // 1 + p [lam]
    QuatElem teich(FqField::Elem lam) const;               // [lam]
};

/// Finite quotient P = U^1_D / (denominator), where the denominator is
/// U^n alone or Z^1-image times U^n.  Elements are enumerated with
/// canonical representatives; generators act by stored permutations.
class QuatQuotient {
public:
    int p, f, n;
    bool center_quotient;
    QuatRing R;
    const FqField* Fq2;  // residue field F_{q^2} (also the coefficient field)

    std::vector<QuatElem> elems;          // canonical reps, id = position
    std::vector<QuatElem> denom;          // denominator subgroup (inside U^1/U^n)
    std::vector<QuatElem> gens;           // 1 + varpi [g^i], i < 2f
    std::vector<std::vector<int>> gen_perm;    // left translation per generator
    std::vector<int> conj_torus;          // x -> [g] x [g]^{-1}
    std::vector<int> omega2;              // 2*omega-tilde per element; 2n for id
    std::vector<int> inv_perm;            // x -> x^{-1}

    std::size_t size() const { return elems.size(); }
    int id(const QuatElem& u) const;      // canonical class of an element
    int mul_ids(int a, int b) const;      // class of product of reps

    static const QuatQuotient& get(int p, int f, int n, bool center_quotient);

private:
    QuatQuotient(int p, int f, int n, bool center_quotient);
    std::unordered_map<std::uint64_t, int> id_of_key_;
};

/// Sparse element of F[P].
using GroupAlgElt = std::map<int, FqField::Elem>;

/// The increasing duals S_k = (m^k)^perp inside functions P -> F, computed
/// by integrating candidate difference data over the Cayley graph.  The
/// dimension jumps dim S_{k+1} - dim S_k are the graded dimensions of the
/// augmentation filtration, and the small quotients S_{k+1}/S_k carry the
/// dual of gr^k.
class DualFiltration {
public:
    const QuatQuotient* P;
    const FqField* F;

    explicit DualFiltration(const QuatQuotient& q);

    /// Ensure S_k is available.
    void compute_upto(int k);

    int dim_S(int k) const { return cnt_.at(k); }
    int graded_dim(int i) const { return cnt_.at(i + 1) - cnt_.at(i); }

    /// Pairing of a basis function with a sparse algebra element.
    FqField::Elem pair(int basis_index, const GroupAlgElt& v) const;

    /// Is v in m^k?  (v must be paired against S_k.)
    bool in_mk(const GroupAlgElt& v, int k);

    /// Coordinates of v relative to the complement basis of S_k inside
    /// S_{k+1} (i.e. the class of v in gr^k = m^k/m^{k+1}, dual coords).
    std::vector<FqField::Elem> grade_coords(const GroupAlgElt& v, int k);

    /// Matrix (dim x dim) of a permutation's pullback on S_k: column j
    /// holds the coordinates of basis_j . perm in the S_k basis.
    std::vector<std::vector<FqField::Elem>> perm_matrix_on_S(const std::vector<int>& perm,
                                                             int k);

    /// Eigencharacter exponents (multiset, exponents of the torus generator
    /// action mod q^2-1) on gr^i = m^i/m^{i+1}.  Reported for the grade
    /// itself, not its dual.
    std::vector<long long> grade_eigchars(int i);

    const std::vector<std::vector<FqField::Elem>>& basis() const { return fn_; }
    const std::vector<int>& cnt() const { return cnt_; }

private:
    std::vector<std::vector<FqField::Elem>> fn_;  // echelonized basis functions
    std::vector<int> piv_;                        // pivot element-id per function
    std::vector<int> cnt_;                        // cnt_[k] = dim S_k
    int reduce_(std::vector<FqField::Elem>& v) const;
    bool add_(std::vector<FqField::Elem> v);
};

}  // namespace tamelat

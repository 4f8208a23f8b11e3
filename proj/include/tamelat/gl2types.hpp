#pragma once

#include <memory>

#include "tamelat/cyclo.hpp"
#include "tamelat/gmod.hpp"
#include "tamelat/groups.hpp"

namespace tamelat {

/// A module over O_N with one action matrix per tagged generator.
struct GModON {
    std::shared_ptr<const GroupTag> tag;
    ONF f;
    int dim = 0;
    std::vector<MatON> act;
};

GMod reduce_mod_p(const GModON& M);
GModON direct_sum_on(const GModON& A, const GModON& B);
GModON tensor_on(const GModON& A, const GModON& B);
std::vector<MatON> hom_space_on(const GModON& M, const GModON& N);

/// Group + tag bundle for GL2 at a coefficient level (level 1 = Gamma).
struct GL2Setup {
    GenGroup grp;
    std::shared_ptr<GroupTag> tag;
    static const GL2Setup& get(int p, int level);
};

/// All Serre weights sigma_{m,n} over F as modules for the given setup
/// (K1-type generators act trivially).
GMod serre_weight_module(const GL2Setup& s, const FqField& F, int m, int n);
IrrList serre_irr_list(const GL2Setup& s, const FqField& F);

/// -------- tame types --------

enum class TameKind { PrincipalSeries, Cuspidal, Scalar, Steinberg };

/// A tame type with its distinguished O_N-lattice action (Gamma-level tag)
/// and, lazily, an exact characteristic-zero realization.
struct TameType {
    TameKind kind = TameKind::Cuspidal;
    int p = 0;
    long long e1 = 0, e2 = 0;  // PS: exponents mod p-1; cuspidal: e1 = psi-exponent mod p^2-1
    GModON lat;                // some stable lattice (Gamma tag over O_N)
    int dim = 0;

    // characteristic-zero realization (CycF matrices for the four Gamma gens)
    std::shared_ptr<std::vector<Mat<CycF>>> cyc;
    const CycloField* C = nullptr;
};

/// Theta(psi), psi = [xi]^e with psi != psi^p, i.e. (p+1) does not divide e.
/// Constructed from the cuspidal-character projector inside an induced
/// monomial module from the nonsplit torus with the same central character.
const TameType& theta(int p, long long e, int N = 6);

/// I([x]^{c1}, [x]^{c2}) with the standard Borel-coset lattice.
TameType principal_series(int p, long long c1, long long c2, int N = 6);

/// sp tensor [x]^c(det): the Steinberg twist lattice, extracted from I(chi,chi).
TameType steinberg(int p, long long c = 0, int N = 6);
/// [x]^c(det): one-dimensional type.
TameType scalar_type(int p, long long c = 0, int N = 6);

/// Characteristic-zero hom rank between realizations (same p).
int cyc_hom_rank(const TameType& A, const TameType& B);
/// Self-hom rank of Sym^1 E^2 tensor the char-0 realization.
int cyc_sym1_selfhom_rank(const TameType& T);

/// Injective envelope of sigma_{m,n} over F[Gamma] (essential hull inside
/// the injective Ind_H^Gamma chi_{m,n}).
GMod inj_envelope(const GL2Setup& s, const FqField& F, int m, int n);

/// Sym^1 O^2 tensor T at full level: the GL2(Z/p^N) module whose K1-type
/// generators act through the algebraic factor.
GModON sym1_twist(const GL2Setup& level_setup, const GModON& gamma_mod);
/// Inflate a Gamma-tag O_N module to the level tag (K1 acting trivially).
GModON inflate_to_level(const GL2Setup& level_setup, const GModON& gamma_mod);

/// Proposition on U-invariants: given W with 1-dimensional U-fixed line of
/// H-character chi, (Sym^1 F^2 tensor W)^U = chi*chi_{1,0} + chi*chi_{1,0}^s.
struct UInvReport {
    bool applicable = false;
    HChar chi;                       // the input character (when applicable)
    std::map<HChar, int> computed;   // H-characters of (Sym1 tensor W)^U
    std::map<HChar, int> expected;
    bool match = false;
};
UInvReport verify_u_invariants(const GMod& W);
UInvReport verify_u_coinvariants(const GMod& W);

}  // namespace tamelat

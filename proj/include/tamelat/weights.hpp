#pragma once

#include <array>
#include <string>
#include <vector>

#include "tamelat/gmod.hpp"

namespace tamelat {

/// Discrete case parameters of the local mod-p representation.
struct RhoBarParams {
    enum Case { Irreducible, ReducibleNonsplit, ReducibleSplit };
    Case cse = Irreducible;
    int p = 5;
    int r = 0;
    int s = 0;
    bool ratio_equal = false;   // the two unramified characters agree
    bool tres_ramifie = false;  // meaningful only when r = 0 and ratio_equal

    void validate() const;
    std::string str() const;
};

/// GL2-side Serre weights (BDJ).
std::vector<IrrLabel> bdj_weights(const RhoBarParams& P);

/// Quaternion-side predicted weights (Khare), as exponents mod p^2-1.
std::vector<long long> khare_weights(const RhoBarParams& P);

/// The chain exponents psi_1, psi_2, psi_3 attached to (a, b).
std::array<long long, 3> psi_triple(int p, int a, long long b);

/// The (a, b) selected for chi inside W_D (the four-row table).  Throws if
/// chi is not one of the four candidate characters of the parameters.
std::pair<int, long long> ab_choice(int p, long long chi_exp, const RhoBarParams& P);

enum class AIdeal { Y, Z, YZ };
std::string a_ideal_str(AIdeal a);
/// The monomial ideal a(chi) of F[y,z]; throws on the (unspecified) clash
/// where both neighbors lie in W_D.
AIdeal a_ideal(int p, long long chi_exp, const std::vector<long long>& WD);

/// JH-intersection counts assumed by the deformation arguments.
struct CrossCheckReport {
    bool applicable = false;
    int psi2_count = -1;                // |JH(Sym1 x Theta(psi2)bar) cap W(rho)|
    bool psi2_ok = false;               // expected exactly one
    bool c1_containment = false;        // (C1): W(rho) inside JH(Sym1 x Theta(psi3)bar)
    int wrho_size = 0;
};
CrossCheckReport cross_check(const RhoBarParams& P, int N = 6);

/// Frobenius/uniformizer symmetry of a quaternion weight set.
bool frobenius_symmetric(int p, const std::vector<long long>& WD);

}  // namespace tamelat

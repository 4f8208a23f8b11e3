#pragma once

#include "tamelat/lattices.hpp"
#include "tamelat/quatgroup.hpp"

namespace tamelat {

/// Module-side bundle for O_D^x / Z^1 U^n: the enumerated quotient group
/// together with the generator tag ("q0".."q{2f-1}" for 1 + varpi [g^i],
/// then "t" for the Teichmueller torus generator).
struct QuatSetup {
    int p = 0, f = 1, n = 2;
    const QuatQuotient* P = nullptr;  // center-quotiented
    std::shared_ptr<GroupTag> tag;
    static const QuatSetup& get(int p, int f, int n);
};

/// All q^2-1 smooth characters as one-dimensional modules.
IrrList qchar_irr_list(const QuatSetup& s);

/// Shared dual-filtration data per quotient group.
DualFiltration& dual_filtration(const QuatQuotient& P);

/// ------------- graded structure of the Iwasawa algebra -------------

struct AugFiltration {
    int n = 0;
    std::vector<int> dims;                          // dim m^i/m^{i+1}, i <= maxdeg
    std::vector<std::vector<long long>> eigchars;   // per degree, exponents mod q^2-1
};

/// Graded dimensions and torus eigencharacters of the augmentation
/// filtration of F[U^1/Z^1 U^n]; optionally checked stable against n+1.
AugFiltration aug_filtration(int p, int f, int n, int maxdeg, bool check_stability);

/// J-bar_{i/2} = m^i (both inclusions; the nontrivial one is elementwise
/// membership (h-1) in m^{2 omega(h)}).
bool filtration_compare(int p, int f, int n, int i);

/// Y_j = sum_lambda sigma_j(lambda)^{-1} (1 + varpi [lambda]) in F[P].
GroupAlgElt y_element(const QuatQuotient& P, int j);

/// Class of [Y_i, Y_j] in gr^2; empty coordinates mean zero.
std::vector<FqField::Elem> bracket_gr2(const QuatQuotient& P, int i, int j);

struct GammaRelationsReport {
    bool gamma3_nonzero_deg2 = false;   // the commutator spans degree 2
    bool bracket_compatible = false;    // algebra bracket of gamma1,gamma2 = gamma3 in gr^2
    bool footnote_u3 = false;           // gamma3 = 1 + p([xi]-[xi]^q) mod U^3
    bool gamma4_central = false;        // 1+p commutes exactly
    bool deg3_brackets_vanish = false;  // [g1,g3], [g2,g3] in m^4
    bool ok() const {
        return gamma3_nonzero_deg2 && bracket_compatible && footnote_u3 && gamma4_central &&
               deg3_brackets_vanish;
    }
};
GammaRelationsReport gamma_relations(int p, int n);

/// ------------- W_{chi,3} and Ext^1 -------------

/// W_{chi,k} = Proj(chi)/m^k as a module over the quotient-group tag.
GMod w_chi(const QuatSetup& s, long long chi_exp, int k);
/// The quotient of W_{chi,3} by the degree-2 characters not isomorphic to chi.
GMod wbar_chi3(const QuatSetup& s, long long chi_exp);

/// dim Ext^1(psi, chi) over O_D^x/Z^1, with two-level stabilization.
int ext1_chars(int p, int f, long long psi_exp, long long chi_exp, int n);

/// ------------- the section-6 lattice chain -------------

struct ThetaChain {
    long long chi_exp = 0;
    int a = 0;
    long long b = 0;
    long long psi1 = 0, psi2 = 0, psi3 = 0;
    LatticeON Theta1, Theta2, Theta3, Theta, ThetaTilde;
    // verification payload
    std::vector<JHMultiset> theta_layers;       // cosocle filtration of Theta/p
    bool theta_filtration_ok = false;           // chi -- chi a^{-1} -- chi
    bool tilde_cosocle_ok = false;
    bool tilde_iso_wbar = false;
    bool tilde_killed_m3 = false;
    int tilde_dim = 0;
};

/// Build and verify the chain for chi = [xi]^{a+2+(p+1)b} (f = 1).
ThetaChain build_theta_chain(int p, int a, long long b, int N = 6, int level_n = 4);

/// psi_i != psi_i^p assertions for the chain exponents.
bool psi_regular(int p, long long e);

}  // namespace tamelat

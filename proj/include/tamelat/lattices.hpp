#pragma once

#include "tamelat/gl2types.hpp"

namespace tamelat {

/// A full-rank O_N-lattice in an ambient O_N-module, recorded by its basis
/// matrix (columns) relative to the ambient standard lattice.  Kept in
/// homothety-normal form: the smallest elementary divisor of the basis is
/// p^0.  prec tracks remaining working precision.
struct LatticeON {
    std::shared_ptr<const GModON> ambient;
    MatON basis;
    int prec = 0;

    int rank() const { return basis.c; }
};

LatticeON standard_lattice(std::shared_ptr<const GModON> amb);

/// Homothety normal form (divide out the p-power content of the basis).
void homothety_normalize(LatticeON& L);

/// The conjugated module structure on the lattice (throws if precision
/// would drop below 3 digits).
GModON lattice_module(const LatticeON& L);
GMod lattice_mod_p(const LatticeON& L);

/// Scale by p^k (stays the same lattice up to homothety).
LatticeON scale_p(const LatticeON& L, int k);

/// ker(L -> L/pL ->> Q) for a surjection given by its matrix on L/pL
/// coordinates (rows = Q coordinates).  p L inside the result.  The result
/// is homothety-normalized unless normalize is false.
LatticeON sublattice_kernel(const LatticeON& L, const Mat<FqF>& proj_to_quotient,
                            bool normalize = true);

/// The unique (up to homothety) lattice with irreducible cosocle sigma,
/// by iterated peeling of the non-sigma part of the cosocle.
LatticeON lattice_with_cosocle(std::shared_ptr<const GModON> amb, const IrrLabel& sigma,
                               const IrrList& irr, int max_iter = 64);

/// Gluing data: surjections r_i : L_i/pL_i ->> W.
struct GlueSpec {
    LatticeON L1, L2;
    GMod W;
    Mat<FqF> r1, r2;  // W.dim x rank_i, equivariant and surjective
};

/// The fibered product 0 -> L -> L1 + L2 -> W inside ambient1 + ambient2.
LatticeON glue(const GlueSpec& spec);

/// Surjectivity/equivariance validation of a GlueSpec.
void validate_glue_spec(const GlueSpec& spec, const IrrList& irr);

/// Hom computations between two lattices' module structures; homothety
/// uniqueness checks ride on rank-1 plus invertibility after scaling.
bool lattices_isomorphic(const LatticeON& A, const LatticeON& B);

/// Does the span of (k-1) sub over the K1 generators contain p L?
/// Computed at level p^2 in L-coordinates.
bool k1_generation_check(const LatticeON& L, const LatticeON& sub);

/// Layer report: socle or radical filtration with H-eigencharacter
/// annotations and the list of two-step nonsplit extensions occurring.
struct FiltrationReport {
    bool socle_upward = true;
    std::vector<JHMultiset> layers;  // socle-first when socle_upward
    std::map<HChar, int> i1_inv_chars;
    std::vector<std::pair<IrrLabel, IrrLabel>> nonsplit;  // (bottom, top) pairs
};
FiltrationReport layer_report(const GMod& Mbar, bool socle_upward, const IrrList& irr,
                              bool with_ext_search = true);

/// Coinvariants under the K1 generator subset, as a module.
GMod k1_coinvariants(const GMod& Mbar);

std::string filtration_str(const std::vector<JHMultiset>& layers);

}  // namespace tamelat

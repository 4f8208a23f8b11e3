#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tamelat/charexp.hpp"
#include "tamelat/linalg.hpp"

namespace tamelat {

/// Label of an irreducible: a Serre weight sigma_{m,n} or a character of
/// the quaternion unit group given by its exponent.
struct IrrLabel {
    enum Kind : int { Serre = 0, QChar = 1 };
    int kind = Serre;
    int a = 0, b = 0;  // Serre: (m, n); QChar: (exponent, 0)

    static IrrLabel serre(int m, int n, int p) {
        IrrLabel l;
        l.kind = Serre;
        l.a = m;
        l.b = ((n % (p - 1)) + (p - 1)) % (p - 1);
        return l;
    }
    static IrrLabel qchar(long long e, long long mod) {
        IrrLabel l;
        l.kind = QChar;
        l.a = (int)(((e % mod) + mod) % mod);
        l.b = 0;
        return l;
    }
    bool operator<(const IrrLabel& o) const {
        if (kind != o.kind) return kind < o.kind;
        if (a != o.a) return a < o.a;
        return b < o.b;
    }
    bool operator==(const IrrLabel& o) const {
        return kind == o.kind && a == o.a && b == o.b;
    }
    std::string str() const {
        if (kind == Serre) return "s(" + std::to_string(a) + "," + std::to_string(b) + ")";
        return "x^" + std::to_string(a);
    }
};

using JHMultiset = std::map<IrrLabel, int>;
std::string jh_str(const JHMultiset& m);

/// Role map for a generator-driven group acting on modules.
struct GroupTag {
    std::string name;
    int p = 0, f = 1;
    std::vector<std::string> gen_names;
    std::map<std::string, std::vector<int>> subsets;

    int gen_index(const std::string& n) const;
    std::vector<int> subset(const std::string& n) const;
    bool same(const GroupTag& o) const { return name == o.name; }
};

/// A module over a group algebra: one action matrix per tagged generator.
struct GMod {
    std::shared_ptr<const GroupTag> tag;
    FqF f;  // coefficient field
    int dim = 0;
    std::vector<Mat<FqF>> act;

    Mat<FqF> act_of(const std::string& gen_name) const { return act[tag->gen_index(gen_name)]; }
};

using IrrList = std::vector<std::pair<IrrLabel, GMod>>;

GMod direct_sum(const GMod& A, const GMod& B);
GMod tensor(const GMod& A, const GMod& B);
GMod dual(const GMod& A);
/// Submodule on the given basis columns (must be action-stable).
GMod sub_module(const GMod& M, const Mat<FqF>& basis);
/// Quotient by the span of the given columns; optionally returns the
/// projection matrix (quotient coordinates of ambient vectors).
GMod quotient_module(const GMod& M, const Mat<FqF>& subbasis, Mat<FqF>* proj = nullptr,
                     Mat<FqF>* lift = nullptr);
bool action_stable(const GMod& M, const Mat<FqF>& basis);

/// Basis of equivariant maps M -> N (same tag, same field).
std::vector<Mat<FqF>> hom_space(const GMod& M, const GMod& N);
int hom_rank(const GMod& M, const GMod& N);

/// Joint fixed space of the named generator subset.
Mat<FqF> invariants(const GMod& M, const std::string& subset);
/// Quotient by the span of (g-1)M over the named subset.
GMod coinvariants(const GMod& M, const std::string& subset, Mat<FqF>* proj = nullptr);
/// Span of (g-1)M over the subset (the subspace itself).
Mat<FqF> augmentation_span(const GMod& M, const std::string& subset);

struct SocleResult {
    Mat<FqF> basis;  // columns spanning the socle
    JHMultiset mult;
};
SocleResult socle(const GMod& M, const IrrList& irr);
/// Radical (intersection of maximal submodules) and cosocle multiplicities.
struct CosocleResult {
    Mat<FqF> radical;
    JHMultiset mult;
};
CosocleResult cosocle(const GMod& M, const IrrList& irr);

JHMultiset jh_multiset(const GMod& M, const IrrList& irr);
/// Socle filtration layers, bottom (socle) first.
std::vector<JHMultiset> socle_layers(const GMod& M, const IrrList& irr);
/// Radical filtration layers, top (cosocle) first.
std::vector<JHMultiset> radical_layers(const GMod& M, const IrrList& irr);

/// Simultaneous eigencharacters of the "H" subset (two commuting diagonal
/// generators of order p-1).
std::map<HChar, int> h_eigenchars(const GMod& M);
/// H-eigencharacters on a given H-stable subspace.
std::map<HChar, int> h_eigenchars_on(const GMod& M, const Mat<FqF>& basis);
/// H-eigencharacters on the coinvariants by the named subset (the quotient
/// is only an H-module; the subset must be normalized by H).
std::map<HChar, int> h_eigenchars_coinv(const GMod& M, const std::string& subset);

/// All submodules (small modules only; throws above the guard).
std::vector<Mat<FqF>> all_submodules(const GMod& M, const IrrList& irr, int max_count = 4096);

/// Does the nonsplit extension (bottom -- top) occur as a subquotient?
bool nonsplit_ext_occurs(const GMod& M, const IrrLabel& bottom, const IrrLabel& top,
                         const IrrList& irr);

/// True if M and N are isomorphic (witnessed by an invertible equivariant map).
bool is_isomorphic(const GMod& M, const GMod& N);

/// Pointwise check that two named generator families commute elementwise on M.
bool generators_act_trivially(const GMod& M, const std::string& subset);

int module_dim_of_label(const IrrLabel& l);

}  // namespace tamelat

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "tamelat/fq.hpp"

namespace tamelat {

/// 2x2 matrix over Z/p^level, row-major [a b; c d].
struct Mat22 {
    std::int64_t a[4]{0, 0, 0, 0};
    bool operator==(const Mat22& o) const {
        return a[0] == o.a[0] && a[1] == o.a[1] && a[2] == o.a[2] && a[3] == o.a[3];
    }
};

/// A finite matrix group given by generators over Z/p^level, with named
/// generator subsets for the distinguished subgroups used downstream.
/// Groups are generator-driven; enumeration is an explicit (capped) call.
struct GenGroup {
    std::string name;
    int p = 0;
    int level = 1;          // coefficients Z/p^level (level 1 = F_p)
    std::int64_t mod = 0;   // p^level
    std::vector<Mat22> gens;
    std::vector<std::string> gen_names;
    std::map<std::string, std::vector<Mat22>> subgroups;  // named generator sets

    Mat22 mul(const Mat22& x, const Mat22& y) const;
    Mat22 inv(const Mat22& x) const;
    Mat22 id() const;
    std::int64_t det(const Mat22& x) const;
    std::uint64_t encode(const Mat22& x) const;

    /// Closure of a generating set (BFS); throws if it exceeds the cap.
    std::vector<Mat22> closure(const std::vector<Mat22>& gen_set,
                               std::size_t cap = 2000000) const;
    std::size_t order(std::size_t cap = 2000000) const { return closure(gens, cap).size(); }

    /// Gamma = GL2(F_p) with subsets "H", "U", "torus".
    static GenGroup gamma(int p);
    /// GL2(Z/p^k) with subsets "H", "U", "K1" (four elementary 1+p e_ij),
    /// "I1" (U-generator together with K1).
    static GenGroup gl2_witt(int p, int k);
};

/// Coset table G/S for an enumerated group and subgroup: factors each
/// element as rep(coset) * spart.
struct CosetTable {
    const GenGroup* G = nullptr;
    std::vector<Mat22> elems;                       // enumeration of G
    std::unordered_map<std::uint64_t, int> index;   // encode -> position
    std::vector<Mat22> sub;                         // enumeration of S
    std::vector<int> coset_of;                      // per element
    std::vector<int> spart_of;                      // index into sub
    std::vector<int> reps;                          // element index per coset
    int ncosets = 0;

    void build(const GenGroup& grp, const std::vector<Mat22>& subgroup_gens);
    int elem_index(const Mat22& m) const;
};

/// The nonsplit torus F_{p^2}^x inside GL2(F_p): multiplication matrix of
/// the fixed field generator in the basis {1, g}.
Mat22 torus_generator_matrix(int p);

/// Embedded-torus coset table with discrete logs of the torus parts.
struct TorusCosets {
    CosetTable tab;
    std::vector<int> sub_dlog;  // dlog of each sub element as a power of M_g
    void build(int p);
};

}  // namespace tamelat

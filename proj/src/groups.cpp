#include "tamelat/groups.hpp"

#include <deque>
#include <stdexcept>

namespace tamelat {

namespace {
std::int64_t pow_i64(std::int64_t b, int e) {
    std::int64_t r = 1;
    while (e--) r *= b;
    return r;
}
std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
    // extended euclid; a must be a unit
    std::int64_t u = 1, v = 0, x = ((a % m) + m) % m, y = m;
    while (y) {
        std::int64_t q = x / y, t;
        t = x - q * y; x = y; y = t;
        t = u - q * v; u = v; v = t;
    }
    if (x != 1) throw std::runtime_error("inv_mod: not a unit");
    return ((u % m) + m) % m;
}
}  // namespace

Mat22 GenGroup::mul(const Mat22& x, const Mat22& y) const {
    Mat22 r;
    r.a[0] = (x.a[0] * y.a[0] + x.a[1] * y.a[2]) % mod;
    r.a[1] = (x.a[0] * y.a[1] + x.a[1] * y.a[3]) % mod;
    r.a[2] = (x.a[2] * y.a[0] + x.a[3] * y.a[2]) % mod;
    r.a[3] = (x.a[2] * y.a[1] + x.a[3] * y.a[3]) % mod;
    return r;
}

std::int64_t GenGroup::det(const Mat22& x) const {
    return (((x.a[0] * x.a[3] - x.a[1] * x.a[2]) % mod) + mod) % mod;
}

Mat22 GenGroup::inv(const Mat22& x) const {
    std::int64_t d = det(x);
    if (d % p == 0) throw std::runtime_error("GenGroup::inv: singular matrix");
    std::int64_t di = inv_mod(d, mod);
    Mat22 r;
    r.a[0] = x.a[3] * di % mod;
    r.a[1] = (mod - x.a[1] % mod) * di % mod;
    r.a[2] = (mod - x.a[2] % mod) * di % mod;
    r.a[3] = x.a[0] * di % mod;
    return r;
}

Mat22 GenGroup::id() const {
    Mat22 r;
    r.a[0] = r.a[3] = 1;
    return r;
}

std::uint64_t GenGroup::encode(const Mat22& x) const {
    if (mod > 65536) throw std::runtime_error("GenGroup::encode: modulus too large for hashing");
    std::uint64_t c = 0;
    for (int i = 0; i < 4; ++i) c = c * (std::uint64_t)mod + (std::uint64_t)x.a[i];
    return c;
}

std::vector<Mat22> GenGroup::closure(const std::vector<Mat22>& gen_set, std::size_t cap) const {
    std::vector<Mat22> out;
    std::unordered_map<std::uint64_t, int> seen;
    std::deque<Mat22> work;
    Mat22 e = id();
    out.push_back(e);
    seen.emplace(encode(e), 0);
    work.push_back(e);
    while (!work.empty()) {
        Mat22 x = work.front();
        work.pop_front();
        for (const auto& g : gen_set) {
            Mat22 y = mul(x, g);
            auto key = encode(y);
            if (seen.count(key)) continue;
            if (out.size() >= cap) throw std::runtime_error("GenGroup::closure: cap exceeded");
            seen.emplace(key, (int)out.size());
            out.push_back(y);
            work.push_back(y);
        }
    }
    return out;
}

GenGroup GenGroup::gamma(int p) {
    const FqField& Fp = FqField::get(p, 1);
    int g0 = Fp.gen();  // generator of F_p^x
    GenGroup G;
    G.name = "GL2(F_" + std::to_string(p) + ")";
    G.p = p;
    G.level = 1;
    G.mod = p;
    auto M = [](std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
        Mat22 m;
        m.a[0] = a; m.a[1] = b; m.a[2] = c; m.a[3] = d;
        return m;
    };
    G.gens = {M(1, 1, 0, 1), M(g0, 0, 0, 1), M(1, 0, 0, g0), M(0, 1, 1, 0)};
    G.gen_names = {"u", "d1", "d2", "w"};
    G.subgroups["U"] = {M(1, 1, 0, 1)};
    G.subgroups["H"] = {M(g0, 0, 0, 1), M(1, 0, 0, g0)};
    G.subgroups["torus"] = {torus_generator_matrix(p)};
    G.subgroups["B"] = {M(1, 1, 0, 1), M(g0, 0, 0, 1), M(1, 0, 0, g0)};
    return G;
}

GenGroup GenGroup::gl2_witt(int p, int k) {
    const FqField& Fp = FqField::get(p, 1);
    int g0 = Fp.gen();
    GenGroup G;
    G.name = "GL2(Z/" + std::to_string(p) + "^" + std::to_string(k) + ")";
    G.p = p;
    G.level = k;
    G.mod = pow_i64(p, k);
    auto M = [](std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
        Mat22 m;
        m.a[0] = a; m.a[1] = b; m.a[2] = c; m.a[3] = d;
        return m;
    };
    G.gens = {M(1, 1, 0, 1), M(g0, 0, 0, 1), M(1, 0, 0, g0), M(0, 1, 1, 0),
              M(1 + p, 0, 0, 1), M(1, p, 0, 1), M(1, 0, p, 1), M(1, 0, 0, 1 + p)};
    G.gen_names = {"u", "d1", "d2", "w", "k11", "k12", "k21", "k22"};
    G.subgroups["U"] = {M(1, 1, 0, 1)};
    G.subgroups["H"] = {M(g0, 0, 0, 1), M(1, 0, 0, g0)};
    G.subgroups["K1"] = {M(1 + p, 0, 0, 1), M(1, p, 0, 1), M(1, 0, p, 1), M(1, 0, 0, 1 + p)};
    G.subgroups["I1"] = {M(1, 1, 0, 1), M(1 + p, 0, 0, 1), M(1, p, 0, 1), M(1, 0, p, 1),
                         M(1, 0, 0, 1 + p)};
    return G;
}

void CosetTable::build(const GenGroup& grp, const std::vector<Mat22>& subgroup_gens) {
    G = &grp;
    elems = grp.closure(grp.gens);
    index.clear();
    for (int i = 0; i < (int)elems.size(); ++i) index.emplace(grp.encode(elems[i]), i);
    sub = grp.closure(subgroup_gens);
    std::unordered_map<std::uint64_t, int> subidx;
    for (int i = 0; i < (int)sub.size(); ++i) subidx.emplace(grp.encode(sub[i]), i);

    coset_of.assign(elems.size(), -1);
    spart_of.assign(elems.size(), -1);
    reps.clear();
    ncosets = 0;
    for (int i = 0; i < (int)elems.size(); ++i) {
        if (coset_of[i] >= 0) continue;
        int c = ncosets++;
        reps.push_back(i);
        for (int s = 0; s < (int)sub.size(); ++s) {
            Mat22 gs = grp.mul(elems[i], sub[s]);
            int j = index.at(grp.encode(gs));
            coset_of[j] = c;
            spart_of[j] = s;
        }
    }
}

int CosetTable::elem_index(const Mat22& m) const { return index.at(G->encode(m)); }

Mat22 torus_generator_matrix(int p) {
    const FqField& F = FqField::get(p, 2);
    // multiplication by the generator g on the basis {1, x}: columns are
    // the digit vectors of g*1 and g*x.
    auto g = F.gen();
    auto c0 = F.digits(F.mul(g, F.one()));
    auto c1 = F.digits(F.mul(g, F.from_digits({0, 1})));
    Mat22 m;
    m.a[0] = c0[0]; m.a[1] = c1[0];
    m.a[2] = c0[1]; m.a[3] = c1[1];
    return m;
}

void TorusCosets::build(int p) {
    GenGroup G = GenGroup::gamma(p);
    tab.build(G, {torus_generator_matrix(p)});
    // torus elements are powers of M_g; identify each listed sub element
    sub_dlog.assign(tab.sub.size(), -1);
    Mat22 acc = G.id();
    Mat22 Mg = torus_generator_matrix(p);
    std::unordered_map<std::uint64_t, int> subidx;
    for (int i = 0; i < (int)tab.sub.size(); ++i) subidx.emplace(G.encode(tab.sub[i]), i);
    int order = p * p - 1;
    for (int e = 0; e < order; ++e) {
        auto it = subidx.find(G.encode(acc));
        if (it == subidx.end()) throw std::runtime_error("TorusCosets: power not in subgroup");
        sub_dlog[it->second] = e;
        acc = G.mul(acc, Mg);
    }
}

}  // namespace tamelat

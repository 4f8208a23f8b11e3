#include "tamelat/graded.hpp"

#include <algorithm>
#include <stdexcept>

namespace tamelat {

std::vector<long long> expand_series(const std::vector<std::pair<int, int>>& num,
                                     const std::vector<std::pair<int, int>>& den, int maxdeg) {
    std::vector<long long> s(maxdeg + 1, 0);
    s[0] = 1;
    auto mul_factor = [&](int k) {  // multiply by (1 - t^k)
        for (int d = maxdeg; d >= k; --d) s[d] -= s[d - k];
    };
    auto div_factor = [&](int k) {  // multiply by 1/(1 - t^k)
        for (int d = k; d <= maxdeg; ++d) s[d] += s[d - k];
    };
    for (auto [k, e] : num)
        for (int i = 0; i < e; ++i) mul_factor(k);
    for (auto [k, e] : den)
        for (int i = 0; i < e; ++i) div_factor(k);
    return s;
}

HilbertSeries pbw_hilbert(int f, int maxdeg) {
    if (f < 1) throw std::runtime_error("pbw_hilbert: f >= 1 required");
    HilbertSeries H;
    H.den = {{1, 2 * f}, {2, f}};
    H.coeffs = expand_series(H.num, H.den, maxdeg);
    return H;
}

std::vector<long long> quotient_hilbert(const MonomialQuotient& Q, int maxdeg) {
    int nv = (int)Q.var_deg.size();
    // base series of the free weighted polynomial ring
    std::vector<std::pair<int, int>> den;
    for (int d : Q.var_deg) den.push_back({d, 1});
    std::vector<long long> base = expand_series({}, den, maxdeg);
    // inclusion-exclusion over lcms of generator subsets
    int ng = (int)Q.gens.size();
    if (ng > 20) throw std::runtime_error("quotient_hilbert: too many generators");
    std::vector<long long> h(maxdeg + 1, 0);
    for (unsigned mask = 0; mask < (1u << ng); ++mask) {
        std::vector<int> lcm(nv, 0);
        int sign = 1;
        for (int g = 0; g < ng; ++g)
            if (mask & (1u << g)) {
                sign = -sign;
                for (int v = 0; v < nv; ++v) lcm[v] = std::max(lcm[v], Q.gens[g][v]);
            }
        long long deg = 0;
        for (int v = 0; v < nv; ++v) deg += (long long)lcm[v] * Q.var_deg[v];
        for (long long d = deg; d <= maxdeg; ++d) h[d] += sign * base[d - deg];
    }
    return h;
}

int gk_dim(const MonomialQuotient& Q) {
    int nv = (int)Q.var_deg.size();
    if (nv > 20) throw std::runtime_error("gk_dim: too many variables");
    int best = 0;
    for (unsigned mask = 0; mask < (1u << nv); ++mask) {
        bool ok = true;
        for (const auto& g : Q.gens) {
            bool inside = true;
            for (int v = 0; v < nv; ++v)
                if (g[v] > 0 && !(mask & (1u << v))) inside = false;
            if (inside) { ok = false; break; }  // the generator survives on this face
        }
        if (ok) best = std::max(best, __builtin_popcount(mask));
    }
    return best;
}

int growth_degree(const std::vector<long long>& h) {
    // difference until eventually zero; d = number of differencings needed
    std::vector<long long> cur = h;
    for (int d = 0; d < (int)h.size(); ++d) {
        bool tail_zero = true;
        int start = (int)cur.size() / 2;
        for (size_t i = start; i < cur.size(); ++i)
            if (cur[i] != 0) tail_zero = false;
        if (tail_zero) return d;
        for (size_t i = cur.size() - 1; i > 0; --i) cur[i] -= cur[i - 1];
    }
    return (int)h.size();
}

CriterionResult criterion_bound(int f, const std::vector<MonomialQuotient>& components) {
    CriterionResult R;
    R.bound = f;
    R.kills_ideal = true;
    int growth = 0;
    for (const auto& Q : components) {
        if ((int)Q.var_deg.size() != 2 * f)
            throw std::runtime_error("criterion_bound: expect variables y_j, z_j");
        // the ideal must contain y_j z_j for every j: some generator divides it
        for (int j = 0; j < f; ++j) {
            bool found = false;
            for (const auto& g : Q.gens) {
                bool div = true;
                for (int v = 0; v < 2 * f; ++v) {
                    int allowed = (v == 2 * j || v == 2 * j + 1) ? 1 : 0;
                    if (g[v] > allowed) div = false;
                }
                if (div) { found = true; break; }
            }
            if (!found) R.kills_ideal = false;
        }
        growth = std::max(growth, gk_dim(Q));
    }
    if (!R.kills_ideal) throw std::runtime_error("criterion_bound: presentation does not kill I_D");
    R.growth = growth;
    return R;
}

}  // namespace tamelat

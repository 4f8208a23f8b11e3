#pragma once

#include <string>
#include <vector>

namespace tamelat {

/// A Hilbert series: expanded coefficients up to a degree bound together
/// with the closed-form factor lists (1-t^k)^e recorded as (k, e).
struct HilbertSeries {
    std::vector<long long> coeffs;
    std::vector<std::pair<int, int>> num;  // numerator factors
    std::vector<std::pair<int, int>> den;  // denominator factors
};

/// Series of U(g_{F_q} tensor F): prod_{j<f} 1/((1-t)^2 (1-t^2)).
HilbertSeries pbw_hilbert(int f, int maxdeg);

/// Expand a factor list up to maxdeg (numerator / denominator products).
std::vector<long long> expand_series(const std::vector<std::pair<int, int>>& num,
                                     const std::vector<std::pair<int, int>>& den, int maxdeg);

/// A quotient of a weighted polynomial ring by a monomial ideal.
struct MonomialQuotient {
    std::vector<int> var_deg;            // degree of each variable
    std::vector<std::vector<int>> gens;  // exponent vectors of the generators
};

/// Hilbert function of the quotient by inclusion-exclusion.
std::vector<long long> quotient_hilbert(const MonomialQuotient& Q, int maxdeg);

/// Krull dimension of the quotient: the largest variable subset containing
/// no generator's support.
int gk_dim(const MonomialQuotient& Q);

/// Eventual polynomial growth degree of a nonnegative sequence (largest d
/// with h(n) ~ n^{d-1}); 0 for eventually-zero.
int growth_degree(const std::vector<long long>& h);

/// Graded-level GK criterion: cyclic components of a module killed by I_D
/// (each ideal must contain y_j z_j for all j).  Returns the bound f and
/// the witnessed growth.
struct CriterionResult {
    int bound = 0;    // f
    int growth = 0;   // measured Krull/growth dimension of the presentation
    bool kills_ideal = false;
};
CriterionResult criterion_bound(int f, const std::vector<MonomialQuotient>& components);

}  // namespace tamelat

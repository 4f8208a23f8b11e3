#include "tamelat/weights.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "tamelat/gl2types.hpp"

namespace tamelat {

void RhoBarParams::validate() const {
    int rmax = (cse == Irreducible) ? p - 1 : p - 2;
    if (r < 0 || r > rmax) throw std::runtime_error("RhoBarParams: r out of range");
    if (s < 0 || s > p - 2) throw std::runtime_error("RhoBarParams: s out of range");
    if (tres_ramifie && (cse != ReducibleNonsplit || r != 0 || !ratio_equal))
        throw std::runtime_error("RhoBarParams: tres-ramifie flag needs r=0 and equal ratio");
}

std::string RhoBarParams::str() const {
    std::string c = cse == Irreducible ? "irred" : (cse == ReducibleNonsplit ? "nonsplit" : "split");
    std::string out = c + " r=" + std::to_string(r) + " s=" + std::to_string(s);
    if (ratio_equal) out += " ratio-equal";
    if (tres_ramifie) out += " tres-ramifie";
    return out;
}

std::vector<IrrLabel> bdj_weights(const RhoBarParams& P) {
    P.validate();
    int p = P.p, r = P.r, s = P.s;
    auto sw = [&](int m, int n) { return IrrLabel::serre(m, n, p); };
    std::vector<IrrLabel> W;
    switch (P.cse) {
        case RhoBarParams::Irreducible:
            W = {sw(r, s + 1), sw(p - 1 - r, r + s + 1)};
            break;
        case RhoBarParams::ReducibleNonsplit:
            if (r != 0) {
                W = {sw(r, s + 1)};
            } else if (P.ratio_equal && P.tres_ramifie) {
                W = {sw(p - 1, s + 1)};
            } else {
                W = {sw(0, s + 1), sw(p - 1, s + 1)};
            }
            break;
        case RhoBarParams::ReducibleSplit:
            if (r >= 1 && r <= p - 4) {
                W = {sw(r, s + 1), sw(p - 3 - r, r + s + 2)};
            } else if (r == 0) {
                W = {sw(0, s + 1), sw(p - 3, s + 2), sw(p - 1, s + 1)};
            } else if (r == p - 3) {
                W = {sw(0, s), sw(p - 3, s + 1), sw(p - 1, s)};
            } else {  // r == p-2
                W = {sw(p - 2, s + 1)};
            }
            break;
    }
    std::sort(W.begin(), W.end());
    return W;
}

namespace {
long long canon(long long e, long long n) { return ((e % n) + n) % n; }
}  // namespace

std::vector<long long> khare_weights(const RhoBarParams& P) {
    P.validate();
    int p = P.p;
    long long n = (long long)p * p - 1;
    long long r = P.r, s = P.s;
    long long zeta = p + 1, alpha = p - 1;
    auto X = [&](long long xi_pow, long long alpha_pow, long long zeta_pow) {
        return canon(xi_pow + alpha * alpha_pow + zeta * zeta_pow, n);
    };
    std::vector<long long> W;
    switch (P.cse) {
        case RhoBarParams::Irreducible:
            if (r != 0 && r != p - 1) {
                W = {X(r, 0, s + 1), X(p * r, 0, s + 1), X(r, -1, s + 1), X(p * r, 1, s + 1)};
            } else {
                W = {X(0, -1, s + 1), X(0, 1, s + 1)};
            }
            break;
        case RhoBarParams::ReducibleNonsplit:
            if (r == 0 && P.ratio_equal && P.tres_ramifie) {
                W = {X(0, 0, s + 1)};
            } else if (r == 0 && P.ratio_equal) {
                W = {X(0, 0, s + 1), X(0, -1, s + 1), X(0, 1, s + 1)};
            } else {
                W = {X(r, -1, s + 1), X(p * r, 1, s + 1)};
            }
            break;
        case RhoBarParams::ReducibleSplit:
            if (r != 0) {
                W = {X(r, -1, s + 1), X(p * r, 1, s + 1)};
            } else {
                W = {X(0, 0, s + 1), X(0, -1, s + 1), X(0, 1, s + 1)};
            }
            break;
    }
    std::sort(W.begin(), W.end());
    W.erase(std::unique(W.begin(), W.end()), W.end());
    return W;
}

std::array<long long, 3> psi_triple(int p, int a, long long b) {
    long long n = (long long)p * p - 1;
    return {canon(a + 2 + (p + 1) * b, n), canon(a + 3 + (p + 1) * (b - 1), n),
            canon(a + 1 + (p + 1) * b, n)};
}

std::pair<int, long long> ab_choice(int p, long long chi_exp, const RhoBarParams& P) {
    P.validate();
    long long n = (long long)p * p - 1;
    chi_exp = canon(chi_exp, n);
    auto WD = khare_weights(P);
    if (!std::binary_search(WD.begin(), WD.end(), chi_exp))
        throw std::runtime_error("ab_choice: chi not in W_D");
    long long r = P.r, s = P.s;
    long long zeta = p + 1, alpha = p - 1;
    struct Row {
        long long e;
        int a;
        long long b;
    };
    std::vector<Row> rows = {
        {canon(r - alpha + zeta * (s + 1), n), (int)r, s},
        {canon(p * r + alpha + zeta * (s + 1), n), (int)(p - 3 - r), r + s + 1},
        {canon(r + zeta * (s + 1), n), (int)(r - 2), s + 1},
        {canon(p * r + zeta * (s + 1), n), (int)(p - 1 - r), r + s},
    };
    for (const auto& row : rows)
        if (row.e == chi_exp) return {row.a, row.b};
    throw std::runtime_error("ab_choice: chi matches no table row");
}

std::string a_ideal_str(AIdeal a) {
    switch (a) {
        case AIdeal::Y: return "(y)";
        case AIdeal::Z: return "(z)";
        default: return "(yz)";
    }
}

AIdeal a_ideal(int p, long long chi_exp, const std::vector<long long>& WD) {
    long long n = (long long)p * p - 1;
    chi_exp = canon(chi_exp, n);
    auto inWD = [&](long long e) {
        return std::find(WD.begin(), WD.end(), canon(e, n)) != WD.end();
    };
    if (!inWD(chi_exp)) throw std::runtime_error("a_ideal: chi not in W_D");
    bool minus = inWD(chi_exp - (p - 1));  // chi alpha^{-1}
    bool plus = inWD(chi_exp + (p - 1));   // chi alpha
    if (minus && plus) throw std::runtime_error("a_ideal: ambiguous (both neighbors present)");
    if (minus) return AIdeal::Y;
    if (plus) return AIdeal::Z;
    return AIdeal::YZ;
}

CrossCheckReport cross_check(const RhoBarParams& P, int N) {
    CrossCheckReport rep;
    int p = P.p;
    bool c1 = (P.cse == RhoBarParams::Irreducible && P.r >= 2 && P.r <= p - 3);
    bool c2 = (P.cse == RhoBarParams::ReducibleNonsplit && P.r >= 1 && P.r <= p - 3);
    if (!c1 && !c2) return rep;
    rep.applicable = true;
    auto Wrho = bdj_weights(P);
    rep.wrho_size = (int)Wrho.size();
    int a = P.r;
    long long b = P.s;
    auto psis = psi_triple(p, a, b);

    const GL2Setup& s1 = GL2Setup::get(p, 1);
    const FqField& F = FqField::get(p, 2);
    IrrList irr = serre_irr_list(s1, F);
    GMod sym1 = serre_weight_module(s1, F, 1, 0);

    auto jh_of_sym1_theta = [&](long long e) {
        const TameType& T = theta(p, e, N);
        GMod red = reduce_mod_p(T.lat);
        return jh_multiset(tensor(sym1, red), irr);
    };

    {
        JHMultiset jh2 = jh_of_sym1_theta(psis[1]);
        int cnt = 0;
        for (const auto& w : Wrho)
            if (jh2.count(w)) cnt += jh2.at(w);
        rep.psi2_count = cnt;
        rep.psi2_ok = (cnt == 1);
    }
    if (c1) {
        JHMultiset jh3 = jh_of_sym1_theta(psis[2]);
        bool all = true;
        for (const auto& w : Wrho)
            if (!jh3.count(w)) all = false;
        rep.c1_containment = all && (rep.wrho_size == 2);
    }
    return rep;
}

bool frobenius_symmetric(int p, const std::vector<long long>& WD) {
    long long n = (long long)p * p - 1;
    std::set<long long> S(WD.begin(), WD.end());
    for (auto e : S)
        if (!S.count(canon(e * p, n))) return false;
    return true;
}

}  // namespace tamelat

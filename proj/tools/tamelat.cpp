#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tamelat/report.hpp"
#include "tamelat/weights.hpp"

using namespace tamelat;

namespace {

int env_default(const char* name, int fallback) {
    const char* v = std::getenv(name);
    if (!v) return fallback;
    try {
        return std::stoi(v);
    } catch (...) {
        return fallback;
    }
}

RhoBarParams params_from_cli(const std::string& case_tag, int p, int r, int s, bool ratio_equal,
                             bool tres) {
    RhoBarParams P;
    if (case_tag == "irred") P.cse = RhoBarParams::Irreducible;
    else if (case_tag == "nonsplit") P.cse = RhoBarParams::ReducibleNonsplit;
    else if (case_tag == "split") P.cse = RhoBarParams::ReducibleSplit;
    else throw CLI::ValidationError("--case must be irred|nonsplit|split");
    P.p = p;
    P.r = r;
    P.s = s;
    P.ratio_equal = ratio_equal;
    P.tres_ramifie = tres;
    P.validate();
    return P;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tamelat: exact verification of tame-type lattice and graded-algebra structure"};
    app.require_subcommand(1);

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    SuiteParams sp;
    sp.precision = env_default("TAMELAT_PRECISION", 6);
    sp.level = env_default("TAMELAT_LEVEL", 4);
    std::string json_path;
    long long chi_exp = SuiteParams::INT_UNSET;
    verify->add_option("--suite", suite, "suite name")->required();
    verify->add_option("--p", sp.p, "prime (>= 5)");
    verify->add_option("--f", sp.f, "residue degree f");
    verify->add_option("--a", sp.a, "parameter a");
    verify->add_option("--b", sp.b, "parameter b");
    verify->add_option("--r", sp.r, "parameter r");
    verify->add_option("--s", sp.s, "parameter s");
    verify->add_option("--chi-exp", chi_exp, "character exponent mod q^2-1");
    verify->add_option("--case", sp.case_tag, "irred|nonsplit|split");
    verify->add_option("--precision", sp.precision, "Witt precision N");
    verify->add_option("--level", sp.level, "quaternion quotient level n");
    verify->add_option("--jobs", sp.jobs, "parallel instances (advisory)");
    verify->add_option("--json", json_path, "write the machine-readable report here");

    auto* tables = app.add_subcommand("tables", "emit weight tables");
    std::string kind, tcase = "irred";
    int tp = 5, tr = 0, ts = 0, chi_row = 0;
    bool tratio = false, ttres = false;
    std::string tjson;
    tables->add_option("kind", kind, "bdj | khare | ab-choice")->required();
    tables->add_option("--case", tcase, "irred|nonsplit|split");
    tables->add_option("--p", tp, "prime");
    tables->add_option("--r", tr, "parameter r");
    tables->add_option("--s", ts, "parameter s");
    tables->add_option("--chi-row", chi_row, "row of the selection table (1-4)");
    tables->add_flag("--ratio-equal", tratio, "the unramified characters agree");
    tables->add_flag("--tres-ramifie", ttres, "tres ramifie case");
    tables->add_option("--json", tjson, "write machine-readable output here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*verify) {
            sp.chi_exp = chi_exp;
            SuiteResult res = run_suite(suite, sp);
            std::cout << to_text(res);
            if (!json_path.empty()) {
                std::ofstream out(json_path);
                out << to_json(res);
            }
            return res.exit_code();
        }
        if (*tables) {
            RhoBarParams P = params_from_cli(tcase, tp, tr, ts, tratio, ttres);
            std::ostringstream txt, js;
            if (kind == "bdj") {
                auto W = bdj_weights(P);
                txt << "W(rho) for " << P.str() << ":";
                js << "{\"kind\": \"bdj\", \"weights\": [";
                for (size_t i = 0; i < W.size(); ++i) {
                    txt << " " << W[i].str();
                    js << (i ? ", " : "") << "\"" << W[i].str() << "\"";
                }
                js << "]}";
            } else if (kind == "khare") {
                auto W = khare_weights(P);
                txt << "W_D(rho) exponents mod " << tp * tp - 1 << " for " << P.str() << ":";
                js << "{\"kind\": \"khare\", \"exponents\": [";
                for (size_t i = 0; i < W.size(); ++i) {
                    txt << " " << W[i];
                    js << (i ? ", " : "") << W[i];
                }
                js << "]}";
            } else if (kind == "ab-choice") {
                if (chi_row < 1 || chi_row > 4)
                    throw CLI::ValidationError("--chi-row must be 1..4");
                long long n = (long long)tp * tp - 1;
                long long zeta = tp + 1, alpha = tp - 1;
                long long chis[4] = {
                    ((tr - alpha + zeta * (ts + 1)) % n + n) % n,
                    ((tp * tr + alpha + zeta * (ts + 1)) % n + n) % n,
                    ((tr + zeta * (ts + 1)) % n + n) % n,
                    ((tp * tr + zeta * (ts + 1)) % n + n) % n,
                };
                auto [a, b] = ab_choice(tp, chis[chi_row - 1], P);
                txt << "(a,b) = (" << a << "," << b << ") for chi exponent "
                    << chis[chi_row - 1];
                js << "{\"kind\": \"ab-choice\", \"a\": " << a << ", \"b\": " << b << "}";
            } else {
                std::cerr << "unknown table kind: " << kind << "\n";
                return 2;
            }
            std::cout << txt.str() << "\n";
            if (!tjson.empty()) {
                std::ofstream out(tjson);
                out << js.str() << "\n";
            }
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

// Acceptance suite: one line per criterion, exact checks only.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "tamelat/report.hpp"

using namespace tamelat;

namespace {

int failures = 0;

void criterion(int num, const std::string& title, bool pass, double secs) {
    std::printf("%s  criterion-%02d  %s  (%.1fs)\n", pass ? "PASS" : "FAIL", num, title.c_str(),
                secs);
    std::fflush(stdout);
    if (!pass) ++failures;
}

bool suite_green(const std::string& name, SuiteParams sp, std::string* detail = nullptr) {
    SuiteResult r = run_suite(name, sp);
    if (detail) {
        for (const auto& c : r.checks)
            if (c.status == CheckReport::Fail)
                *detail += "    FAIL " + c.id + "\n      expected: " + c.expected +
                           "\n      computed: " + c.computed + "\n";
    }
    return r.all_pass();
}

double secs_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                 t0)
               .count() /
           1000.0;
}

}  // namespace

int main() {
    using Clock = std::chrono::steady_clock;
    std::string detail;

    {
        auto t0 = Clock::now();
        SuiteParams sp5;
        sp5.p = 5;
        bool ok5 = suite_green("diamond", sp5, &detail);
        double t5 = secs_since(t0);
        auto t1 = Clock::now();
        SuiteParams sp7;
        sp7.p = 7;
        bool ok7 = suite_green("diamond", sp7, &detail);
        double t7 = secs_since(t1);
        bool budget = (t5 < 60.0) && (t7 < 600.0);
        criterion(1, "Diamond reductions, p in {5,7}, all (a,b), within budget",
                  ok5 && ok7 && budget, t5 + t7);
    }
    {
        auto t0 = Clock::now();
        SuiteParams sp;
        sp.p = 5;
        bool ok = suite_green("section3", sp, &detail);
        criterion(2, "section-3.3 battery (filtrations, extensions, sublattices, K1)", ok,
                  secs_since(t0));
    }
    {
        auto t0 = Clock::now();
        SuiteParams sp;
        sp.p = 5;
        bool ok = suite_green("section34-glue", sp, &detail);
        criterion(3, "section-3.4 gluing (both regimes)", ok, secs_since(t0));
    }
    {
        auto t0 = Clock::now();
        SuiteParams sp;
        sp.p = 5;
        sp.level = 4;
        bool ok = suite_green("quaternion-lie", sp, &detail);
        criterion(4, "quaternion Lie structure at p=5 (f=1 level 4; f=2 reduced)", ok,
                  secs_since(t0));
    }
    {
        auto t0 = Clock::now();
        SuiteParams sp;
        sp.p = 5;
        bool ok = suite_green("wchi3", sp, &detail);
        criterion(5, "W_{chi,3} graded structure and Wbar for three characters", ok,
                  secs_since(t0));
    }
    {
        auto t0 = Clock::now();
        SuiteParams sp;
        sp.p = 5;
        bool ok = suite_green("ext1", sp, &detail);
        criterion(6, "Ext^1 law over all characters mod twist, two-level stabilized", ok,
                  secs_since(t0));
    }
    {
        auto t0 = Clock::now();
        SuiteParams sp;
        sp.p = 5;
        bool ok = suite_green("weights-tables", sp, &detail);
        criterion(7, "weight tables (BDJ, Khare, selection, a(chi)) + symmetry", ok,
                  secs_since(t0));
    }
    {
        auto t0 = Clock::now();
        SuiteParams sp;
        sp.p = 5;
        bool ok = suite_green("theta-chain", sp, &detail);
        criterion(8, "Theta chain for every chi in W_D over (C1)/(C2)", ok, secs_since(t0));
    }
    {
        auto t0 = Clock::now();
        // criterion 9 rides inside weights-tables as the cross-check ids;
        // run it standalone for the report line
        SuiteParams sp;
        sp.p = 5;
        SuiteResult r = run_suite("weights-tables", sp);
        bool ok = true;
        bool seen = false;
        for (const auto& c : r.checks)
            if (c.id.rfind("cross-check", 0) == 0) {
                seen = true;
                if (c.status != CheckReport::Pass) ok = false;
            }
        criterion(9, "JH-intersection counts for (C1)/(C2) hypotheses", ok && seen,
                  secs_since(t0));
    }
    {
        auto t0 = Clock::now();
        SuiteParams sp;
        sp.p = 5;
        bool ok1 = suite_green("pbw", sp, &detail);
        bool ok2 = suite_green("gk", sp, &detail);
        criterion(10, "graded/GK identities and the criterion bound", ok1 && ok2,
                  secs_since(t0));
    }

    if (!detail.empty()) std::printf("%s", detail.c_str());
    std::printf(failures ? "ACCEPTANCE: %d criterion(s) failed\n" : "ACCEPTANCE: all criteria passed\n",
                failures);
    return failures ? 1 : 0;
}

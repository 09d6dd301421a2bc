// One line per acceptance criterion: verdict, worst residual, runtime.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "wdvv/flat.hpp"
#include "wdvv/suites.hpp"

using namespace wdvv;

namespace {

struct Criterion {
    int id;
    const char* title;
    Suite suite;
    double budget_s;
};

// Criteria whose literal statement cannot hold; they are still evaluated and printed.
bool known_deviation(const std::string& identity) { return identity.rfind("euler_literal", 0) == 0; }

struct Outcome {
    bool pass = true;
    bool deviation_only = true;
};

Outcome judge(const Criterion& c, const ResidualReport& r, double seconds)
{
    double worst = 0.0, worst_ratio = 0.0;
    std::string worst_id;
    std::vector<const ResidualEntry*> failed;
    for (const auto& e : r.entries()) {
        if (e.kind == ResidualEntry::Kind::Control) continue;
        if (!e.pass) failed.push_back(&e);
        const double ratio = e.tol > 0 ? e.residual / e.tol : 0.0;
        if (e.kind == ResidualEntry::Kind::Residual && !(ratio <= worst_ratio)) {
            worst_ratio = ratio;
            worst = e.residual;
            worst_id = e.identity;
        }
    }
    const bool in_time = seconds < c.budget_s;
    Outcome o;
    o.pass = failed.empty() && in_time;
    for (const auto* e : failed) o.deviation_only = o.deviation_only && known_deviation(e->identity);
    o.deviation_only = o.deviation_only && in_time;

    std::printf("[%s] %d. %-46s worst %.2e (%s)  %6.2f s / %.0f s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, worst,
                worst_id.c_str(), seconds, c.budget_s);
    for (const auto* e : failed)
        std::printf("       failed: %-28s residual %.3e  tol %.1e%s\n", e->identity.c_str(), e->residual, e->tol,
                    known_deviation(e->identity) ? "  [known deviation]" : "");
    return o;
}

}  // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {1, "special functions (20 moduli)", Suite::SpecialFn, 10.0},
        {2, "Bell polynomials", Suite::Bell, 5.0},
        {3, "Hurwitz data vs contour oracles", Suite::Hurwitz, 60.0},
        {4, "prepotential: closed forms, WDVV, Euler, Gram", Suite::Wdvv, 300.0},
        {5, "q-deformation", Suite::QDeform, 120.0},
        {6, "tau-derivative identities, PDE1, jump", Suite::Identities, 60.0},
    };
    SuiteOptions opt;
    opt.threads = default_threads();

    bool all = true, blocking = false;
    int controls_total = 0, suites_with_control = 0;
    bool controls_ok = true;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        const ResidualReport r = run_suite(c.suite, opt);
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const Outcome o = judge(c, r, dt);
        all = all && o.pass;
        blocking = blocking || (!o.pass && !o.deviation_only);

        int n = 0;
        for (const auto& e : r.entries())
            if (e.kind == ResidualEntry::Kind::Control) {
                ++n;
                controls_ok = controls_ok && e.pass;
            }
        controls_total += n;
        suites_with_control += n > 0;
    }
    const bool c7 = controls_ok && suites_with_control == int(criteria.size());
    std::printf("[%s] 7. %-46s %d controls in %d/%zu suites, all above 1e-5\n", c7 ? "PASS" : "FAIL",
                "negative controls", controls_total, suites_with_control, criteria.size());
    all = all && c7;
    blocking = blocking || !c7;

    if (all) std::printf("all criteria pass\n");
    else if (!blocking) std::printf("criteria fail only on known deviations (see failed lines above)\n");
    else std::printf("unexpected failures\n");
    return blocking ? 1 : 0;
}

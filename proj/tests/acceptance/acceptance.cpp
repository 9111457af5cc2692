// One PASS/FAIL line per acceptance criterion, built from the same runs the CLI does.

#include <chrono>
#include <cstdio>
#include <string>

#include "weblab/cli_report.hpp"

using namespace weblab;

namespace {

std::string config_path(const std::string& name) { return std::string(WEBLAB_SOURCE_DIR) + "/configs/" + name + ".json"; }

struct Timed {
    RunResult result;
    double seconds = 0;
};

Timed timed_run(Command c, const std::string& config)
{
    const auto cfg = load_config(config_path(config));
    const auto t0 = std::chrono::steady_clock::now();
    Timed t{run(c, cfg), 0};
    t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return t;
}

const Verdict* find(const RunResult& r, const std::string& name)
{
    for (const auto& v : r.verdicts)
        if (v.name == name)
            return &v;
    return nullptr;
}

int failures = 0;

void line(const char* id, bool pass, std::string detail)
{
    while (!detail.empty() && (detail.back() == ' ' || detail.back() == ';'))
        detail.pop_back();
    std::printf("%s %s: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
    if (!pass)
        ++failures;
}

// all listed verdicts present and passing, no suite errors
bool verdicts_ok(const RunResult& r, std::initializer_list<const char*> names, std::string& detail)
{
    bool ok = r.errors.empty();
    for (const auto& e : r.errors)
        detail += "[error " + e + "] ";
    for (const char* n : names) {
        const Verdict* v = find(r, n);
        if (!v) {
            detail += std::string("[missing ") + n + "] ";
            ok = false;
            continue;
        }
        ok = ok && v->pass;
        detail += v->detail + "; ";
    }
    return ok;
}

std::string secs(double s)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f s", s);
    return buf;
}

}  // namespace

int main()
{
    try {
        {
            const auto t = timed_run(Command::verify, "cartesian");
            std::string d;
            const bool ok = verdicts_ok(t.result, {"AC1_pde_identities"}, d);
            line("AC1", ok && t.seconds < 5, d + secs(t.seconds) + " (budget 5 s)");
        }
        const auto cart_rank = timed_run(Command::rank, "cartesian");
        {
            std::string d;
            const bool ok = verdicts_ok(cart_rank.result, {"AC2_cartesian_rank"}, d);
            line("AC2", ok && cart_rank.seconds < 30, d + secs(cart_rank.seconds) + " (budget 30 s)");
        }
        {
            const auto r = timed_run(Command::rank, "bipolar");
            const auto h = timed_run(Command::hexagon, "bipolar");
            std::string d;
            const bool ok = verdicts_ok(r.result, {"AC3_bipolar_rank"}, d) &
                            verdicts_ok(h.result, {"AC3_hexagonal_subwebs", "hexagon_rank_agreement"}, d);
            line("AC3", ok, d);
        }
        {
            const auto t = timed_run(Command::rank, "tangent");
            std::string d;
            line("AC4", verdicts_ok(t.result, {"AC4_tangent_rank"}, d), d);
        }
        {
            std::string d;
            bool ok = verdicts_ok(timed_run(Command::quartic, "cartesian").result, {"AC5a_two_lines_and_conic"}, d);
            ok &= verdicts_ok(timed_run(Command::quartic, "bipolar").result, {"AC5b_four_general_lines"}, d);
            ok &= verdicts_ok(timed_run(Command::quartic, "tangent").result, {"AC5c_harmonic_pencil"}, d);
            line("AC5", ok, d);
        }
        {
            std::string d;
            bool ok = verdicts_ok(timed_run(Command::frobenius, "cartesian").result, {"AC6_frobenius_integrability"}, d);
            ok &= verdicts_ok(timed_run(Command::frobenius, "bipolar").result, {"AC6_frobenius_integrability"}, d);
            line("AC6", ok, d);
        }
        {
            std::string d;
            line("AC7", verdicts_ok(cart_rank.result, {"AC7_factorization_relations"}, d), d);
        }
        {
            std::string d;
            line("AC8", verdicts_ok(timed_run(Command::rank, "sixweb").result, {"AC8_sixweb_not_maximal"}, d), d);
        }
        {
            bool same = true, pass = true;
            double total = 0;
            std::string d;
            for (const char* name : {"cartesian", "bipolar", "tangent"}) {
                const auto a = timed_run(Command::all, name);
                const auto b = timed_run(Command::all, name);
                const bool eq = dump_report(a.result.report) == dump_report(b.result.report);
                same = same && eq;
                pass = pass && a.result.pass();
                total += a.seconds;
                d += std::string(name) + (eq ? " identical" : " DIFFERS") + ", ";
            }
            line("AC9", same && pass, d + "'all' on the three default configs in " + secs(total));
        }
    } catch (const std::exception& e) {
        std::printf("FAIL acceptance harness: %s\n", e.what());
        return 2;
    }
    return failures == 0 ? 0 : 1;
}

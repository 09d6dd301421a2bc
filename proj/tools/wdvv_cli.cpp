// wdvv: evaluate prepotentials and run the invariant suites from the shell.

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "cli_support.hpp"
#include "wdvv/flat.hpp"
#include "wdvv/prepotential.hpp"
#include "wdvv/qdeform.hpp"
#include "wdvv/suites.hpp"

using namespace wdvv;
using nlohmann::json;

namespace {

struct RunManifest {
    std::string profile;
    std::string point_path;
    std::string q;
    std::string suite = "all";
    std::optional<double> tol;
    std::uint64_t seed = 7;
    std::string out;
    std::string format = "json";
    std::map<std::string, std::string> coords;
    std::vector<std::string> coord_pairs;
    int lambda_grid = 0;
};

class Output {
public:
    explicit Output(const std::string& path)
    {
        if (path.empty()) return;
        file_.open(path);
        if (!file_) throw Error(ErrorCode::ParseError, "cannot open output file '" + path + "'");
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

const char* kind_name(ResidualEntry::Kind k)
{
    switch (k) {
    case ResidualEntry::Kind::Flag: return "flag";
    case ResidualEntry::Kind::Control: return "control";
    default: return "residual";
    }
}

void collect_coords(RunManifest& m)
{
    for (const auto& kv : m.coord_pairs) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw Error(ErrorCode::ParseError, "--coord expects label=value, got '" + kv + "'");
        m.coords[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
}

HurwitzPoint sampled_point(const BranchProfile& pr, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> re(-0.3, 0.3), im(1.0, 1.4);
    SamplerOptions opt;
    opt.coeff_radius = 0.6;
    opt.min_abs_x1 = 0.8;
    const Modulus md(cplx(re(rng), im(rng)));
    return random_point(pr, md, rng, opt);
}

// Point from --point, from coordinate flags, or sampled from --seed when neither is given.
HurwitzPoint load_point(const RunManifest& m)
{
    std::optional<BranchProfile> prof;
    if (!m.profile.empty()) prof = cli::parse_profile(m.profile);
    if (!m.point_path.empty()) {
        std::ifstream in(m.point_path);
        if (!in) throw Error(ErrorCode::ParseError, "cannot read '" + m.point_path + "'");
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception& e) {
            throw Error(ErrorCode::ParseError, m.point_path + ": " + e.what());
        }
        HurwitzPoint p = point_from_json(j);
        if (prof && !(*prof == p.profile()))
            throw Error(ErrorCode::InvalidPoint, "point profile " + to_string(p.profile()) + " differs from --profile");
        return p;
    }
    const BranchProfile pr = prof.value_or(BranchProfile{{1}});
    if (m.coords.empty()) return sampled_point(pr, m.seed);

    const FlatChart ch(pr);
    for (const auto& [label, _] : m.coords) ch.index(label);
    std::vector<cplx> c(ch.size());
    for (int a = 0; a < ch.size(); ++a) {
        const auto it = m.coords.find(ch.labels()[a]);
        if (it == m.coords.end()) throw Error(ErrorCode::InvalidPoint, "missing coordinate '" + ch.labels()[a] + "'");
        c[a] = cli::parse_complex(it->second);
    }
    if (!(c[FlatChart::tau_index].imag() > 0.0)) throw Error(ErrorCode::InvalidModulus, "Im(tau) must be positive");
    return ch.point(c);
}

void require_valid(const HurwitzPoint& p, const ResidualReport& v)
{
    for (const auto& e : v.entries()) {
        if (e.pass) continue;
        for (const char* hard : {"x1_nonzero", "pole0_at_origin", "poles_distinct", "residue_closure", "evaluation"})
            if (e.identity.rfind(hard, 0) == 0)
                throw Error(ErrorCode::InvalidPoint, "point of profile " + to_string(p.profile()) + " fails " + e.identity +
                                                         (e.note.empty() ? "" : " (" + e.note + ")"));
    }
}

json coords_json(const FlatChart& ch, const std::vector<cplx>& c)
{
    json j = json::object();
    for (int a = 0; a < ch.size(); ++a) j[ch.labels()[a]] = complex_to_json(c[a]);
    return j;
}

int cmd_eval(const RunManifest& m)
{
    const HurwitzPoint p = load_point(m);
    const ResidualReport valid = validate_point(p);
    require_valid(p, valid);
    const FlatChart ch(p.profile());

    const cplx F = f_phi(p);
    const cplx l1 = first_line(p), s2 = sigma2(p), s3 = sigma3(p), s4 = sigma4(p);
    std::vector<std::pair<std::string, cplx>> rows{
        {"F", F}, {"first_line", l1}, {"sigma2", s2}, {"sigma3", s3}, {"sigma4", s4}, {"tails", F - l1 - s2 - s3 - s4}};

    json doc{{"command", "eval"},
             {"profile", p.profile().orders},
             {"point", to_json(p)},
             {"coords", coords_json(ch, ch.coords(p))},
             {"validation", valid.to_json()}};
    if (!m.q.empty()) {
        const cplx q = cli::parse_complex(m.q);
        const QPoint qp = t_q_map(p, q);
        const cplx Fq = f_phi_q(qp);
        rows.emplace_back("F_q", Fq);
        doc["q"] = complex_to_json(q);
        doc["deformed_coords"] = coords_json(ch, ch.coords(qp.deformed()));
    }
    json comps = json::object();
    for (const auto& [k, v] : rows) comps[k] = complex_to_json(v);
    doc["values"] = comps;

    std::vector<std::pair<cplx, cplx>> grid;
    if (m.lambda_grid > 0) {
        const int N = m.lambda_grid;
        for (int b = 0; b < N; ++b)
            for (int a = 0; a < N; ++a) {
                const cplx z = (a + 0.5) / N + (b + 0.5) / N * p.tau();
                grid.emplace_back(z, lambda_eval(p, z));
            }
        json g = json::array();
        for (const auto& [z, l] : grid) g.push_back({{"z", complex_to_json(z)}, {"lambda", complex_to_json(l)}});
        doc["lambda_grid"] = g;
    }

    Output out(m.out);
    auto& os = out.stream();
    if (m.format == "json") {
        os << doc.dump(2) << "\n";
    } else if (m.lambda_grid > 0) {
        os << cli::csv_row({"z_re", "z_im", "lambda_re", "lambda_im"});
        for (const auto& [z, l] : grid)
            os << cli::csv_row({cli::format_double(z.real()), cli::format_double(z.imag()), cli::format_double(l.real()),
                                cli::format_double(l.imag())});
    } else {
        os << cli::csv_row({"quantity", "re", "im"});
        for (const auto& [k, v] : rows) os << cli::csv_row({k, cli::format_double(v.real()), cli::format_double(v.imag())});
    }
    std::cerr << "F = " << fmt::format("{:.15g}{:+.15g}i", F.real(), F.imag()) << "\n";
    return cli::Ok;
}

void write_reports(const RunManifest& m, const std::vector<std::pair<std::string, ResidualReport>>& reps)
{
    Output out(m.out);
    auto& os = out.stream();
    if (m.format == "json") {
        json arr = json::array();
        for (const auto& [name, r] : reps)
            arr.push_back({{"suite", name}, {"all_pass", r.all_pass()}, {"entries", r.to_json()}});
        os << arr.dump(2) << "\n";
        return;
    }
    os << cli::csv_row({"suite", "identity", "residual", "tol", "pass", "kind", "note"});
    for (const auto& [name, r] : reps)
        for (const auto& e : r.entries())
            os << cli::csv_row({name, e.identity, cli::format_double(e.residual), cli::format_double(e.tol),
                                e.pass ? "true" : "false", kind_name(e.kind), e.note});
}

int cmd_verify(const RunManifest& m)
{
    std::vector<Suite> suites;
    if (m.suite == "all") suites = all_suites();
    else if (const auto s = parse_suite(m.suite)) suites = {*s};
    else throw Error(ErrorCode::ParseError, "unknown suite '" + m.suite + "'");

    SuiteOptions opt;
    opt.seed = m.seed;
    opt.tol = m.tol;
    opt.threads = default_threads();
    if (!m.profile.empty()) opt.profile = cli::parse_profile(m.profile);

    std::vector<std::pair<std::string, ResidualReport>> reps;
    bool ok = true;
    for (Suite s : suites) {
        const auto t0 = std::chrono::steady_clock::now();
        ResidualReport r = run_suite(s, opt);
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::size_t failed = 0;
        for (const auto& e : r.entries()) failed += !e.pass;
        std::cerr << fmt::format("{:<11} {:>3} checks, {} failed, {:.2f} s\n", to_string(s), r.entries().size(), failed,
                                 dt);
        for (const auto& e : r.entries())
            if (!e.pass) std::cerr << fmt::format("  FAIL {} residual {:.3e} tol {:.1e}\n", e.identity, e.residual, e.tol);
        ok = ok && r.all_pass();
        reps.emplace_back(to_string(s), std::move(r));
    }
    write_reports(m, reps);
    return ok ? cli::Ok : cli::Failed;
}

int cmd_roundtrip(const RunManifest& m)
{
    const HurwitzPoint p = load_point(m);
    const cplx q = m.q.empty() ? cplx(0.0) : cli::parse_complex(m.q);
    const FlatChart ch(p.profile());
    const auto orig = ch.coords(p);
    auto diff = [&](const std::vector<cplx>& c) {
        double d = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) d = std::max(d, std::abs(c[i] - orig[i]));
        return d;
    };
    ResidualReport r;
    const std::string dumped = to_json(p).dump();
    const HurwitzPoint back = point_from_json(json::parse(dumped));
    r.flag("json_point_bitwise", to_json(back).dump() == dumped && diff(ch.coords(back)) == 0.0);

    const QPoint qp = t_q_map(p, q);
    r.add("t_q_round_trip", diff(ch.coords(t_q_inverse(qp))), 1e-13);
    r.add("t_q_flat_round_trip", diff(ch.coords(t_q(t_q(flat_point(p), q), -q))), 1e-13);
    const QPoint qback = qpoint_from_json(json::parse(to_json(qp).dump()));
    r.flag("json_qpoint_bitwise", ch.coords(qback.deformed()) == ch.coords(qp.deformed()) && qback.q() == qp.q());
    if (q == 0.0) r.flag("q0_identity", ch.coords(qp.deformed()) == orig);

    write_reports(m, {{"roundtrip", r}});
    return r.all_pass() ? cli::Ok : cli::Failed;
}

void add_output(CLI::App* c, RunManifest& m)
{
    c->add_option("--out", m.out, "Output file (stdout when omitted)");
    c->add_option("--format", m.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    c->add_option("--seed", m.seed, "Seed for sampled points and suites");
    c->add_option("--profile", m.profile, "Branch profile, e.g. 1 or 1,0");
}

void add_point(CLI::App* c, RunManifest& m)
{
    c->add_option("--point", m.point_path, "Point as JSON file");
    c->add_option("--q", m.q, "Deformation parameter");
    for (const char* label : {"u", "tau"})
        c->add_option_function<std::string>(std::string("--") + label,
                                            [&m, label](const std::string& v) { m.coords[label] = v; },
                                            std::string("Flat coordinate ") + label);
    for (int a = 1; a <= 8; ++a)
        c->add_option_function<std::string>("--x" + std::to_string(a),
                                            [&m, a](const std::string& v) {
                                                m.coords["x" + std::to_string(a) + "(0)"] = v;
                                            },
                                            "Flat coordinate x" + std::to_string(a) + "(0)");
    c->add_option("--coord", m.coord_pairs, "Any flat coordinate as label=value, e.g. s1=0.3+0.2i or x1(1)=0.5");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Genus-one WDVV prepotentials on Hurwitz spaces"};
    app.require_subcommand(1, 1);
    RunManifest m;

    auto* eval = app.add_subcommand("eval", "Evaluate the prepotential and its components at a point");
    add_output(eval, m);
    add_point(eval, m);
    eval->add_option("--lambda-grid", m.lambda_grid, "Sample lambda on an N x N grid of the period cell")
        ->check(CLI::Range(1, 4096));

    auto* verify = app.add_subcommand("verify", "Run invariant suites");
    add_output(verify, m);
    verify->add_option("--suite", m.suite, "special-fn, bell, hurwitz, wdvv, qdeform, identities or all");
    verify->add_option("--tol", m.tol, "Override every residual tolerance");

    auto* roundtrip = app.add_subcommand("roundtrip", "JSON and T_q round trips");
    add_output(roundtrip, m);
    add_point(roundtrip, m);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? cli::Ok : cli::Parse;
    }

    try {
        collect_coords(m);
        if (eval->parsed()) return cmd_eval(m);
        if (verify->parsed()) return cmd_verify(m);
        return cmd_roundtrip(m);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::exit_code(e.code());
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::Parse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::Numerical;
    }
}

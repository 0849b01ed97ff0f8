// k3w: Pell-type witnesses for twisted Mukai vectors on rank-2 K3 lattices.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "k3w/family.hpp"
#include "k3w/report.hpp"
#include "k3w/selfcheck.hpp"

namespace {

using namespace k3w;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRejected = 3;

struct RunConfig {
    std::int64_t g = 5;
    std::int64_t r = 2;
    std::int64_t s = 2;
    std::string d;
    std::string n;
    std::int64_t mu = -1;
    std::string x;
    std::string y;
    std::string sign = "both";
    bool tilde = false;
    std::int64_t d_max = 180;
    std::int64_t xy_bound = 500;
    std::string x_threshold;
    int search_depth = 64;
    unsigned threads = 0;
    std::size_t chain = 0;
    bool cross_check = false;
    std::string format = "table";
    std::string out;
    std::uint64_t seed = 20061;
    std::size_t iterations = 1000;
    bool inject_fault = false;
};

// key=value lines; '#' starts a comment. Keys use the long flag names with
// '-' or '_' interchangeably.
void apply_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::InvalidArgument, "cannot read config file " + path);
    const std::map<std::string, std::function<void(const std::string&)>> setters{
        {"g", [&](const std::string& v) { cfg.g = std::stoll(v); }},
        {"r", [&](const std::string& v) { cfg.r = std::stoll(v); }},
        {"s", [&](const std::string& v) { cfg.s = std::stoll(v); }},
        {"d", [&](const std::string& v) { cfg.d = v; }},
        {"n", [&](const std::string& v) { cfg.n = v; }},
        {"mu", [&](const std::string& v) { cfg.mu = std::stoll(v); }},
        {"x", [&](const std::string& v) { cfg.x = v; }},
        {"y", [&](const std::string& v) { cfg.y = v; }},
        {"sign", [&](const std::string& v) { cfg.sign = v; }},
        {"tilde", [&](const std::string& v) { cfg.tilde = v == "1" || v == "true"; }},
        {"dmax", [&](const std::string& v) { cfg.d_max = std::stoll(v); }},
        {"xy_bound", [&](const std::string& v) { cfg.xy_bound = std::stoll(v); }},
        {"x_threshold", [&](const std::string& v) { cfg.x_threshold = v; }},
        {"search_depth", [&](const std::string& v) { cfg.search_depth = std::stoi(v); }},
        {"threads", [&](const std::string& v) { cfg.threads = static_cast<unsigned>(std::stoul(v)); }},
        {"chain", [&](const std::string& v) { cfg.chain = std::stoul(v); }},
        {"format", [&](const std::string& v) { cfg.format = v; }},
        {"out", [&](const std::string& v) { cfg.out = v; }},
        {"seed", [&](const std::string& v) { cfg.seed = std::stoull(v); }},
        {"iterations", [&](const std::string& v) { cfg.iterations = std::stoul(v); }},
    };
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string t) {
            const auto b = t.find_first_not_of(" \t\r");
            const auto e = t.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::replace(key.begin(), key.end(), '-', '_');
        const auto it = setters.find(key);
        if (it == setters.end()) throw Error(Errc::InvalidArgument, "unknown config key '" + key + "'");
        try {
            it->second(trim(line.substr(eq + 1)));
        } catch (const std::logic_error&) {
            throw Error(Errc::InvalidArgument, "bad value for config key '" + key + "'");
        }
    }
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out);
    if (!f) throw Error(Errc::InvalidArgument, "cannot write " + cfg.out);
    f << text;
}

std::vector<Sign> signs_of(const std::string& sign) {
    if (sign == "plus" || sign == "+") return {Sign::Plus};
    if (sign == "minus" || sign == "-") return {Sign::Minus};
    if (sign == "both") return {Sign::Plus, Sign::Minus};
    throw Error(Errc::InvalidArgument, "sign must be plus, minus or both");
}

std::string normalized_sign(const std::string& sign) {
    const auto s = signs_of(sign);
    return s.size() == 2 ? "both" : sign_name(s.front());
}

Integer require_integer(const std::string& text, const char* flag) {
    if (text.empty()) throw Error(Errc::InvalidArgument, std::string("missing --") + flag);
    return parse_integer(text);
}

SearchOptions search_options(const RunConfig& cfg) {
    SearchOptions so;
    so.search_depth = cfg.search_depth;
    so.threads = cfg.threads;
    if (!cfg.x_threshold.empty()) so.x_threshold = parse_integer(cfg.x_threshold);
    return so;
}

FamilyQuery query_for(const RunConfig& cfg, Sign sign) {
    FamilyQuery q{cfg.g, cfg.r, cfg.s, sign, cfg.tilde};
    q.validate();
    return q;
}

DocumentQuery document_query(const RunConfig& cfg) {
    return DocumentQuery{cfg.g, cfg.r, cfg.s, normalized_sign(cfg.sign), cfg.tilde};
}

bool all_verified(const std::vector<Witness>& ws) {
    for (const auto& w : ws) {
        if (!w.report.all_passed()) return false;
    }
    return true;
}

std::string render(const RunConfig& cfg, const std::optional<Witness>& lattice_from,
                   const std::vector<Witness>& ws, const json& extra = json::object()) {
    switch (parse_format(cfg.format)) {
        case OutputFormat::Json: {
            json doc = witnesses_document(document_query(cfg), lattice_from, ws);
            for (const auto& [k, v] : extra.items()) doc[k] = v;
            return doc.dump(2) + "\n";
        }
        case OutputFormat::Csv:
            return witnesses_csv(ws);
        case OutputFormat::Table:
            break;
    }
    return witnesses_table(ws);
}

std::string report_lines(const Witness& w) {
    std::ostringstream os;
    for (const auto& c : w.report.checks) {
        os << "  [" << (c.passed ? "ok" : "FAIL") << "] " << c.name << ": " << c.computed.substr(0, 64)
           << " vs " << c.expected.substr(0, 64) << "\n";
    }
    return os.str();
}

int cmd_enumerate(const RunConfig& cfg) {
    if (cfg.d_max < 1) throw Error(Errc::InvalidArgument, "--dmax must be >= 1");
    const SearchOptions so = search_options(cfg);
    std::vector<Witness> all;
    bool cross_ok = true;
    for (Sign sign : signs_of(cfg.sign)) {
        const FamilyQuery q = query_for(cfg, sign);
        const auto members = enumerate_members(q, cfg.d_max, so);
        for (const auto& m : members) {
            if (m.witness) all.push_back(*m.witness);
        }
        if (cfg.cross_check) {
            std::set<Integer> in_family;
            for (const auto& m : members) in_family.insert(m.d);
            for (const Integer& d : enumerate_direct(q, cfg.xy_bound)) {
                if (d <= cfg.d_max && !in_family.count(d)) {
                    std::cerr << "cross-check: d=" << d << " (" << sign_name(sign)
                              << ") found by the closed formula but not by the Pell search\n";
                    cross_ok = false;
                }
            }
        }
    }
    std::stable_sort(all.begin(), all.end(), [](const Witness& a, const Witness& b) { return a.d < b.d; });
    emit(cfg, render(cfg, std::nullopt, all));
    return all_verified(all) && cross_ok ? kExitOk : kExitCheckFailed;
}

json per_mu_json(const MemberResult& m, Sign sign) {
    json arr = json::array();
    for (const auto& o : m.per_mu) {
        arr.push_back(json{{"sign", sign_name(sign)},
                           {"mu", o.mu},
                           {"status", mu_status_name(o.status)},
                           {"modulus", integer_to_json(o.certificate.modulus)},
                           {"period", o.certificate.period},
                           {"seeds", o.certificate.seeds}});
    }
    return arr;
}

int cmd_member(const RunConfig& cfg, bool details) {
    const Integer d = require_integer(cfg.d, "d");
    const SearchOptions so = search_options(cfg);
    std::vector<Witness> found;
    json per_mu = json::array();
    std::ostringstream text;
    for (Sign sign : signs_of(cfg.sign)) {
        const FamilyQuery q = query_for(cfg, sign);
        const MemberResult m = member(q, d, so);
        for (auto& e : per_mu_json(m, sign)) per_mu.push_back(e);
        text << "d=" << d << " sign=" << sign_name(sign) << (cfg.tilde ? " (tilde)" : "") << "\n";
        for (const auto& o : m.per_mu) {
            text << "  mu=" << o.mu << ": " << mu_status_name(o.status) << " (residue period "
                 << o.certificate.period << " mod " << o.certificate.modulus << ", "
                 << o.certificate.seeds << " seeds)\n";
        }
        if (!m.witness) continue;
        const Witness& w = *m.witness;
        found.push_back(w);
        text << "  witness: x=" << abbreviate(w.x, 60) << " y=" << abbreviate(w.y, 60) << "\n";
        text << "  F^2=" << inner(w.F, w.F) << " F.H=" << abbreviate(inner(w.F, w.F.lattice().H()), 60)
             << " D.H=" << abbreviate(dot_H(w.D), 60) << "\n";
        text << report_lines(w);
        if (details) {
            const PellProblem p = pell_problem(q, d, w.mu);
            const FundamentalUnit u = fundamental_unit(d);
            text << "  pell: u^2 - " << d << " w^2 = " << p.N << ", u = " << q.lead() << "x + "
                 << p.offset << ", w = " << q.lead() << "y\n";
            text << "  fundamental unit: (" << abbreviate(u.u0, 60) << ", " << abbreviate(u.w0, 60) << ")\n";
            text << "  x threshold: " << w.x_threshold << "\n";
            if (cfg.chain > 0) {
                text << "  chain:\n";
                for (const auto& c : witness_chain(q, d, w.mu, cfg.chain, so)) {
                    text << "    x=" << abbreviate(c.x, 60) << " y=" << abbreviate(c.y, 60)
                         << (c.report.all_passed() ? " ok" : " FAIL") << "\n";
                }
            }
        }
    }
    if (parse_format(cfg.format) == OutputFormat::Table) {
        emit(cfg, text.str());
    } else {
        emit(cfg, render(cfg, found.empty() ? std::nullopt : std::optional<Witness>(found.front()), found,
                         json{{"per_mu", per_mu}}));
    }
    if (found.empty()) return kExitRejected;
    return all_verified(found) ? kExitOk : kExitCheckFailed;
}

int cmd_pell(const RunConfig& cfg) {
    const Integer d = require_integer(cfg.d, "d");
    const Integer N = require_integer(cfg.n, "n");
    if (N == 0) throw Error(Errc::DegenerateEquation, "N must be nonzero");
    const FundamentalUnit unit = fundamental_unit(d);
    const auto sols = solve_bounded(d, N);
    const Integer bound = class_bound(d, N, unit);
    const auto fmt = parse_format(cfg.format);
    std::ostringstream os;
    if (fmt == OutputFormat::Json) {
        json doc{{"d", integer_to_json(d)},
                 {"N", integer_to_json(N)},
                 {"unit", {{"u0", integer_to_json(unit.u0)}, {"w0", integer_to_json(unit.w0)}}},
                 {"w_bound", integer_to_json(bound)},
                 {"solutions", json::array()}};
        for (const auto& s : sols) doc["solutions"].push_back({{"u", integer_to_json(s.u)}, {"w", integer_to_json(s.w)}});
        os << doc.dump(2) << "\n";
    } else if (fmt == OutputFormat::Csv) {
        os << "u,w\n";
        for (const auto& s : sols) os << s.u << "," << s.w << "\n";
    } else {
        os << "u^2 - " << d << " w^2 = " << N << "\n";
        os << "fundamental unit: (" << unit.u0 << ", " << unit.w0 << ")\n";
        os << "class bound: 0 <= w <= " << bound << "\n";
        if (sols.empty()) os << "no solutions\n";
        for (const auto& s : sols) os << "  " << s << "\n";
    }
    emit(cfg, os.str());
    return kExitOk;
}

int cmd_hilbert(const RunConfig& cfg) {
    const auto signs = signs_of(cfg.sign);
    if (signs.size() != 1) throw Error(Errc::InvalidArgument, "hilbert needs --sign plus or minus");
    const FamilyQuery q = query_for(cfg, signs.front());
    if (q.hilbert_length() < 1) throw Error(Errc::InvalidArgument, "g = rs gives S[0]");
    const Integer d = require_integer(cfg.d, "d");
    if (cfg.mu < 0) throw Error(Errc::InvalidArgument, "missing --mu");
    const Integer threshold = cfg.x_threshold.empty() ? default_x_threshold(q.g, q.lead())
                                                      : parse_integer(cfg.x_threshold);
    const Witness w = make_witness(q, d, cfg.mu, require_integer(cfg.x, "x"), require_integer(cfg.y, "y"),
                                   threshold);
    const BbValues bb = bb_values(w);
    const bool ok = verify_bb_corollary(w, q);
    const Integer n(q.hilbert_length());
    if (parse_format(cfg.format) == OutputFormat::Json) {
        json doc = witnesses_document(document_query(cfg), w, {w});
        doc["hilbert"] = json{{"n", integer_to_json(n)},
                              {"f2", integer_to_json(f_square(n))},
                              {"eps", integer_to_json(bb.eps)},
                              {"q", integer_to_json(bb.q)},
                              {"b", integer_to_json(bb.b)},
                              {"expected_q", 2 * sign_value(q.sign) * q.lead()},
                              {"corollary", ok}};
        emit(cfg, doc.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "S[" << n << "]: f^2 = " << f_square(n) << ", eps = " << bb.eps << "\n";
        os << "q(h1) = " << bb.q << " (expected " << 2 * sign_value(q.sign) * q.lead() << ")\n";
        os << "b(h1,H) = " << bb.b << " = " << mod_floor(bb.b, Integer(2 * q.g - 2)) << " mod "
           << 2 * q.g - 2 << " (expected " << mod_floor(Integer(q.lead() * cfg.mu) * w.y, Integer(2 * q.g - 2))
           << ")\n";
        os << "corollary: " << (ok ? "holds" : "FAILS") << "\n";
        os << report_lines(w);
        emit(cfg, os.str());
    }
    return ok ? kExitOk : kExitCheckFailed;
}

int cmd_selfcheck(const RunConfig& cfg) {
    SelfcheckOptions so;
    so.seed = cfg.seed;
    so.iterations = cfg.iterations;
    so.inject_fault = cfg.inject_fault;
    bool ok = true;
    std::ostringstream os;
    for (const auto& r : run_selfcheck(so)) {
        ok = ok && r.passed;
        os << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.cases << " cases)";
        if (!r.passed) os << ": " << r.message;
        os << "\n";
    }
    emit(cfg, os.str());
    return ok ? kExitOk : kExitCheckFailed;
}

int exit_code_for(Errc code) {
    switch (code) {
        case Errc::SquareDiscriminant:
        case Errc::SquareInput:
        case Errc::NoValidMu:
        case Errc::DegenerateEquation:
        case Errc::ThresholdUnreachable:
            return kExitRejected;
        default:
            return kExitUsage;
    }
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"Pell-type witnesses for twisted Mukai vectors (r, H, s) on rank-2 K3 lattices"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "key=value defaults file")->envname("K3W_CONFIG");

    auto common = [&](CLI::App* sub) {
        sub->add_option("--g", cfg.g, "genus, H^2 = 2g-2")->envname("K3W_G");
        sub->add_option("--r", cfg.r, "rank r of v = (r,H,s)")->envname("K3W_R");
        sub->add_option("--s", cfg.s, "s of v = (r,H,s)")->envname("K3W_S");
        sub->add_option("--sign", cfg.sign, "plus, minus or both")->envname("K3W_SIGN");
        sub->add_flag("--tilde", cfg.tilde, "use the family with r and s exchanged")->envname("K3W_TILDE");
        sub->add_option("--x-threshold", cfg.x_threshold, "accept D.H <= this")->envname("K3W_X_THRESHOLD");
        sub->add_option("--search-depth", cfg.search_depth, "residue periods walked")->envname("K3W_SEARCH_DEPTH");
        sub->add_option("--threads", cfg.threads, "worker threads, 0 = all")->envname("K3W_THREADS");
        sub->add_option("--format", cfg.format, "table, json or csv")
            ->check(CLI::IsMember({"table", "json", "csv"}))
            ->envname("K3W_FORMAT");
        sub->add_option("--out", cfg.out, "write output here instead of stdout")->envname("K3W_OUT");
    };

    auto* en = app.add_subcommand("enumerate", "witnesses for all d <= dmax");
    common(en);
    en->add_option("--dmax", cfg.d_max, "largest d")->envname("K3W_DMAX");
    en->add_option("--xy-bound", cfg.xy_bound, "box for --cross-check")->envname("K3W_XY_BOUND");
    en->add_flag("--cross-check", cfg.cross_check, "compare with the closed-formula scan");

    auto* mem = app.add_subcommand("member", "decide membership of one d");
    common(mem);
    mem->add_option("--d", cfg.d, "discriminant, det N(S) = -d")->envname("K3W_D");

    auto* wit = app.add_subcommand("witness", "membership with Pell and orbit details");
    common(wit);
    wit->add_option("--d", cfg.d, "discriminant")->envname("K3W_D");
    wit->add_option("--chain", cfg.chain, "also list this many successive witnesses")->envname("K3W_CHAIN");

    auto* pell = app.add_subcommand("pell", "solve u^2 - d w^2 = N");
    pell->add_option("--d", cfg.d, "non-square d")->envname("K3W_D");
    pell->add_option("--n", cfg.n, "right-hand side N")->envname("K3W_N");
    pell->add_option("--format", cfg.format)->check(CLI::IsMember({"table", "json", "csv"}))->envname("K3W_FORMAT");
    pell->add_option("--out", cfg.out)->envname("K3W_OUT");

    auto* hil = app.add_subcommand("hilbert", "Beauville-Bogomolov values for a given witness");
    common(hil);
    hil->add_option("--d", cfg.d)->envname("K3W_D");
    hil->add_option("--mu", cfg.mu)->envname("K3W_MU");
    hil->add_option("--x", cfg.x, "x of D = (xH + yG)/(2g-2)")->envname("K3W_X");
    hil->add_option("--y", cfg.y)->envname("K3W_Y");

    auto* sc = app.add_subcommand("selfcheck", "run the seeded property suites");
    sc->add_option("--seed", cfg.seed)->envname("K3W_SEED");
    sc->add_option("--iterations", cfg.iterations)->envname("K3W_ITERATIONS");
    sc->add_flag("--inject-fault", cfg.inject_fault, "corrupt witnesses; the run must fail");
    sc->add_option("--out", cfg.out)->envname("K3W_OUT");

    // The config file only supplies defaults: read it before parsing so that
    // environment variables and flags override it.
    try {
        for (int i = 1; i < argc; ++i) {
            const std::string a = argv[i];
            if (a == "--config" && i + 1 < argc) config_path = argv[i + 1];
            if (a.rfind("--config=", 0) == 0) config_path = a.substr(9);
        }
        if (config_path.empty()) {
            if (const char* env = std::getenv("K3W_CONFIG")) config_path = env;
        }
        if (!config_path.empty()) apply_config_file(config_path, cfg);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*en) return cmd_enumerate(cfg);
        if (*mem) return cmd_member(cfg, false);
        if (*wit) return cmd_member(cfg, true);
        if (*pell) return cmd_pell(cfg);
        if (*hil) return cmd_hilbert(cfg);
        if (*sc) return cmd_selfcheck(cfg);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitUsage;
}

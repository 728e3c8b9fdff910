#include "qinv/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "qinv/jones.hpp"
#include "qinv/numth.hpp"
#include "qinv/skein.hpp"
#include "qinv/tvstate.hpp"
#include "qinv/verify.hpp"
#include "qinv/wrtlens.hpp"

namespace qinv {

namespace {

using json = nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::pair<std::int64_t, std::int64_t> parse_pair(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw CLI::ValidationError("expected N:K, got " + s);
    return {std::stoll(s.substr(0, colon)), std::stoll(s.substr(colon + 1))};
}

std::vector<int> parse_word(const std::string& s) {
    std::vector<int> word;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) word.push_back(std::stoi(tok));
    return word;
}

struct Options {
    bool json = false;
    bool timing = false;
    int threads = 0;
};

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

int run_dedekind(std::int64_t q, std::int64_t m, const Options& o, std::ostream& out) {
    const auto s = dedekind_sum(q, m);
    const auto d = defect_s3_to_lens(m, q);
    if (o.json) {
        emit(out, {{"q", q}, {"m", m}, {"s", s.get_str()}, {"twelve_m_s", d}});
    } else {
        out << "s(" << q << "," << m << ") = " << s.get_str() << "\n";
        out << "12m·s = " << d << "\n";
    }
    return 0;
}

int run_skein(int r, bool table, const Options& o, std::ostream& out) {
    const auto& sp = SkeinParams::get(r);
    if (table || o.json) {
        json j{{"r", r}, {"t", sp.t()}, {"A", to_json(sp.A())}, {"eta", to_json(sp.eta())},
               {"kappa", to_json(sp.kappa())}};
        json deltas = json::array(), qints = json::array();
        for (int i = 0; i <= r - 2; ++i) deltas.push_back(to_json(sp.delta(i)));
        for (int n = 1; n <= r - 1; ++n) qints.push_back(to_json(quantum_int(sp, n)));
        j["delta"] = deltas;
        j["quantum_int"] = qints;
        emit(out, j);
        return 0;
    }
    out << "r = " << r << ", t = " << sp.t() << "\n";
    out << "A = " << to_string(sp.A()) << "\n";
    out << "kappa = " << to_string(sp.kappa()) << "\n";
    out << "eta = " << to_string(sp.eta()) << "\n";
    for (int i = 0; i <= r - 2; ++i) out << "Delta_" << i << " = " << to_string(sp.delta(i)) << "\n";
    return 0;
}

int run_tv(int r, const std::string& file, bool count_only, const Options& o, std::ostream& out) {
    const auto tri = parse_triangulation(read_file(file));
    const auto sk = validate(tri);
    const auto& sp = SkeinParams::get(r);
    const auto count = count_colorings(sk, sp);
    if (count_only) {
        if (o.json)
            emit(out, {{"r", r}, {"colorings", count}});
        else
            out << count << "\n";
        return 0;
    }
    const auto value = tv(tri, sp);
    if (o.json)
        emit(out, {{"r", r}, {"tets", sk.tets}, {"colorings", count}, {"tv", to_json(value)}});
    else
        out << to_string(value) << "\n";
    return 0;
}

int run_wrt(int r, std::int64_t m, std::int64_t q, int c, bool ambient, const Options& o, std::ostream& out) {
    const auto& sp = SkeinParams::get(r);
    const auto w = wrt_lens(sp, {m, q, c});
    if (o.json) {
        json j{{"r", r}, {"m", m}, {"q", q}, {"color", c}, {"canonical", to_json(w.canonical)}};
        if (ambient) j["ambient"] = to_json(w.ambient);
        emit(out, j);
    } else {
        out << to_string(w.canonical) << "\n";
        if (ambient) out << "ambient: " << to_string(w.ambient) << "\n";
    }
    return 0;
}

int run_jones(const std::string& file, const std::string& eval, const std::string& sqrt, const Options& o,
              std::ostream& out) {
    if (eval.empty() != sqrt.empty()) throw CLI::ValidationError("--eval and --sqrt go together");
    const auto pd = parse_pd(read_file(file));
    const auto v = jones(pd);
    std::optional<CycElem> value;
    if (!eval.empty()) {
        const auto [n, k] = parse_pair(eval);
        const auto [n2, k2] = parse_pair(sqrt);
        value = evaluate_at_root(v, make_root_spec(n, k, n2, k2));
    }
    if (o.json) {
        json j{{"jones", to_json(v, "z")}, {"components", analyze(pd).components}};
        if (value) j["value"] = to_json(*value);
        emit(out, j);
    } else {
        out << "V = " << v.to_string("z") << "\n";
        if (value) out << "V(z = xi_" << sqrt.substr(0, sqrt.find(':')) << "^" << sqrt.substr(sqrt.find(':') + 1) << ") = " << to_string(*value) << "\n";
    }
    return 0;
}

int run_arf(const std::string& file, const Options& o, std::ostream& out) {
    const auto a = arf_from_jones(parse_pd(read_file(file)));
    if (o.json)
        emit(out, {{"arf", to_string(a)}});
    else
        out << "Arf = " << to_string(a) << "\n";
    return 0;
}

int run_periodicity(const std::string& cover_file, const std::string& quot_file, std::int64_t p, int s,
                    bool all_roots, const std::string& root, const std::string& sqrt, const Options& o,
                    std::ostream& out) {
    const auto cover = parse_pd(read_file(cover_file));
    const auto quot = parse_pd(read_file(quot_file));
    std::vector<RootSpec> roots;
    if (all_roots) {
        roots = admissible_roots(p, s);
    } else {
        if (root.empty() || sqrt.empty()) throw CLI::ValidationError("give --root and --sqrt, or --all-roots");
        const auto [n, k] = parse_pair(root);
        const auto [n2, k2] = parse_pair(sqrt);
        roots.push_back(make_root_spec(n, k, n2, k2));
    }
    bool ok = true;
    json reps = json::array();
    for (const auto& rt : roots) {
        json j{{"zeta", {rt.order, rt.k}}, {"sqrt", {rt.sqrt_order, rt.sqrt_k}}};
        try {
            const auto rep = corollary1(cover, quot, p, s, rt);
            j["branch"] = rep.branch;
            j["cover_value"] = to_json(rep.cover_value);
            j["quotient_value"] = to_json(rep.paired_value);
            j["verdict"] = rep.stated_pairing ? "pass" : "fail";
            ok = ok && rep.stated_pairing;
        } catch (const PreconditionError& e) {
            j["verdict"] = "precondition-rejected";
            j["detail"] = e.what();
        }
        reps.push_back(j);
    }
    if (o.json) {
        emit(out, {{"p", p}, {"s", s}, {"roots", reps}});
    } else {
        for (const auto& j : reps) {
            out << "zeta = xi_" << j["zeta"][0].get<std::int64_t>() << "^" << j["zeta"][1].get<std::int64_t>()
                << ", sqrt = xi_" << j["sqrt"][0].get<std::int64_t>() << "^" << j["sqrt"][1].get<std::int64_t>()
                << ": " << j["verdict"].get<std::string>();
            if (j.contains("detail")) out << " (" << j["detail"].get<std::string>() << ")";
            out << "\n";
        }
    }
    return ok ? 0 : 2;
}

struct VerifyArgs {
    std::string what = "all";
    std::vector<int> rs;
    std::vector<std::int64_t> ps;
    std::int64_t max_m = 0;
    int r = 0, s = 1, c = -1;
    std::int64_t p = 0;
};

int run_verify(const VerifyArgs& a, const Options& o, std::ostream& out) {
    std::vector<Suite> suites;
    const auto rs = a.rs.empty() ? std::vector<int>{3, 4, 5, 7} : a.rs;
    const auto ps = a.ps.empty() ? std::vector<std::int64_t>{3, 5, 7} : a.ps;
    if (a.what == "all") {
        suites = run_all();
    } else if (a.what == "theorem1-lens") {
        suites.push_back(theorem1_grid(rs, a.max_m ? a.max_m : 5, ps));
    } else if (a.what == "defect-sign") {
        suites.push_back(defect_sign_grid());
    } else if (a.what == "dedekind") {
        suites.push_back(dedekind_grid(a.max_m ? a.max_m : 25));
    } else if (a.what == "siegel") {
        suites.push_back(siegel_grid());
    } else if (a.what == "theorem3-unknot") {
        if (a.r) {
            Suite s{"theorem3-unknot", {}};
            const int lo = a.c < 0 ? 0 : a.c, hi = a.c < 0 ? a.r - 2 : a.c;
            for (int c = lo; c <= hi; ++c) s.reports.push_back(theorem3_unknot(a.r, a.p, a.s, c));
            suites.push_back(s);
        } else {
            suites.push_back(theorem3_grid());
        }
    } else if (a.what == "theorem2") {
        suites.push_back(theorem2_grid());
    } else if (a.what == "frobenius") {
        suites.push_back(frobenius_grid(a.rs.empty() ? std::vector<int>{3, 4, 5} : a.rs, a.max_m ? a.max_m : 3, ps));
    } else if (a.what == "theorem4") {
        suites.push_back(theorem4_grid());
    } else {
        throw CLI::ValidationError("unknown verify target " + a.what);
    }
    bool ok = true;
    json all = json::array();
    for (const auto& s : suites) {
        ok = ok && s.count(Verdict::fail) == 0;
        all.push_back(to_json(s, o.timing));
    }
    if (o.json) {
        emit(out, {{"all_pass", ok}, {"suites", all}});
    } else {
        for (const auto& s : suites) {
            out << s.name << ": " << s.count(Verdict::pass) << " pass, " << s.count(Verdict::fail) << " fail, "
                << s.count(Verdict::precondition_rejected) << " rejected\n";
            for (const auto& r : s.reports)
                if (r.verdict != Verdict::pass) out << "  " << r.id << ": " << to_string(r.verdict) << " " << r.detail << "\n";
        }
    }
    return ok ? 0 : 2;
}

int run_braid(int strands, const std::string& word, std::ostream& out) {
    emit(out, to_json(pd_from_braid(strands, parse_word(word))));
    return 0;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact quantum invariants and their congruences"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--threads", o.threads, "worker threads (default QINV_THREADS)")->check(CLI::PositiveNumber);

    std::int64_t q = 1, m = 1, p = 0;
    int r = 0, color = 0, strands = 0, power_s = 1;
    bool table = false, count_only = false, ambient = false, all_roots = false;
    std::string file, quot, eval, sqrt, word;
    VerifyArgs va;

    auto* ded = app.add_subcommand("dedekind", "Dedekind sum s(q,m) and 12m s(q,m)");
    ded->add_option("--q", q)->required();
    ded->add_option("--m", m)->required();

    auto* sk = app.add_subcommand("skein", "skein quantities at level r");
    sk->add_option("--r", r)->required();
    sk->add_flag("--table", table, "JSON table of Delta, [n], eta, kappa");

    auto* tvc = app.add_subcommand("tv", "Turaev-Viro state sum of a triangulation");
    tvc->add_option("--r", r)->required();
    tvc->add_option("--tri", file)->required()->check(CLI::ExistingFile);
    tvc->add_flag("--count-only", count_only);

    auto* wrt = app.add_subcommand("wrt-lens", "WRT invariant of L(m,q) with a colored core");
    wrt->add_option("--r", r)->required();
    wrt->add_option("--m", m)->required();
    wrt->add_option("--q", q)->required();
    wrt->add_option("--color", color);
    wrt->add_flag("--ambient", ambient);

    auto* jo = app.add_subcommand("jones", "Jones polynomial of a PD code");
    jo->add_option("--pd", file)->required()->check(CLI::ExistingFile);
    jo->add_option("--eval", eval, "root xi_N^K as N:K");
    jo->add_option("--sqrt", sqrt, "its square root xi_N2^K2 as N2:K2");

    auto* arf = app.add_subcommand("arf", "Arf invariant from V(i)");
    arf->add_option("--pd", file)->required()->check(CLI::ExistingFile);

    auto* per = app.add_subcommand("periodicity", "Jones congruence of a periodic link and its quotient");
    per->add_option("--pd", file)->required()->check(CLI::ExistingFile);
    per->add_option("--quotient", quot)->required()->check(CLI::ExistingFile);
    per->add_option("--prime", p)->required();
    per->add_option("--power", power_s);
    per->add_flag("--all-roots", all_roots);
    per->add_option("--root", eval, "zeta = xi_N^K as N:K");
    per->add_option("--sqrt", sqrt, "its square root as N2:K2");

    auto* ver = app.add_subcommand("verify", "congruence scenario grids");
    ver->add_option("target", va.what, "theorem1-lens, defect-sign, dedekind, siegel, theorem3-unknot, theorem2, frobenius, theorem4 or all");
    ver->add_option("--r", va.rs, "levels for grids");
    ver->add_option("--prime", va.ps, "primes for grids");
    ver->add_option("--max-m", va.max_m, "grid bound");
    ver->add_option("--p", va.p, "theorem3-unknot: prime");
    ver->add_option("--s", va.s, "theorem3-unknot: power");
    ver->add_option("--c", va.c, "theorem3-unknot: color");
    ver->add_flag("--timing", o.timing, "include per-scenario seconds");

    auto* br = app.add_subcommand("braid-pd", "PD code of a braid closure");
    br->add_option("--strands", strands)->required();
    br->add_option("--word", word, "comma-separated generators, negative for inverses")->required();

    for (auto* sub : app.get_subcommands({})) sub->add_flag("--json", o.json, "JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    if (o.threads == 0)
        if (const char* env = std::getenv("QINV_THREADS")) o.threads = std::atoi(env);
    if (o.threads > 0) set_num_threads(o.threads);

    try {
        if (*ded) return run_dedekind(q, m, o, out);
        if (*sk) return run_skein(r, table, o, out);
        if (*tvc) return run_tv(r, file, count_only, o, out);
        if (*wrt) return run_wrt(r, m, q, color, ambient, o, out);
        if (*jo) return run_jones(file, eval, sqrt, o, out);
        if (*arf) return run_arf(file, o, out);
        if (*per) return run_periodicity(file, quot, p, power_s, all_roots, eval, sqrt, o, out);
        if (*ver) {
            if (va.what == "theorem3-unknot" && !va.rs.empty()) va.r = va.rs.front();
            return run_verify(va, o, out);
        }
        if (*br) return run_braid(strands, word, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace qinv

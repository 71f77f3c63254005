// qgw: build R-matrices for the shipped modules, run the check suites, and drive
// the double-bosonization pipeline from the command line.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "qgw/dbos.hpp"
#include "qgw/frt.hpp"

using namespace qgw;

namespace {

struct JobConfig {
    std::string command;
    std::string builtin, module_path, roots_path, matrix_path;
    std::string variant = "default";
    std::string convention = "paper";
    std::string probe_rows;
    std::string target_length;
    std::string out;
    std::string format = "text";
    std::string method = "generic";
    int degree = 0;
    bool allow_qybe_failure = false;
    bool qybe = false, frt_condition = false, identity_suite = false, antipode = false, all = false;
    std::string emit_module, emit_roots;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// every payload ends with a newline; no timestamps
void emit(const JobConfig& cfg, const json& record, const std::vector<std::string>& text)
{
    std::ostringstream os;
    if (cfg.format == "record") {
        os << record.dump(2) << "\n";
    } else {
        for (const auto& l : text)
            os << l << "\n";
    }
    if (cfg.out.empty()) {
        std::cout << os.str();
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot write " + cfg.out);
    f << os.str();
}

json read_json(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        size_t line = 1, col = 1;
        for (size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
            if (text[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw std::runtime_error(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
    }
}

void write_json(const std::string& path, const json& j)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot write " + path);
    f << j.dump(2) << "\n";
}

ModuleData load_module(const JobConfig& cfg)
{
    if (!cfg.builtin.empty() && !cfg.module_path.empty())
        throw UsageError("give either --builtin or --module, not both");
    if (!cfg.builtin.empty())
        return builtin_module(cfg.builtin);
    if (!cfg.module_path.empty())
        return module_from_json(read_json(cfg.module_path));
    throw UsageError("one of --builtin or --module is required");
}

std::vector<RootVectorSpec> load_roots(const JobConfig& cfg)
{
    if (!cfg.roots_path.empty())
        return roots_from_json(read_json(cfg.roots_path));
    if (!cfg.builtin.empty())
        return builtin_roots(cfg.builtin, cfg.variant);
    throw UsageError("--roots is required for a module file");
}

RMatrixBundle load_bundle(const JobConfig& cfg)
{
    ModuleData m = load_module(cfg);
    BuildOptions opts;
    opts.require_qybe = !cfg.allow_qybe_failure;
    return build_rvv(m, load_roots(cfg), opts);
}

const TensorMatrix& pick(const RMatrixBundle& b, const std::string& convention)
{
    if (convention == "paper")
        return b.r_paper;
    if (convention == "std")
        return b.r_std;
    throw UsageError("--convention must be paper or std");
}

Rational target_for(const JobConfig& cfg)
{
    if (!cfg.target_length.empty())
        return parse_rational(cfg.target_length);
    static const std::map<std::string, Rational> defaults = {
        {"b3-spin", Rational(1)}, {"a1-spin32", Rational(6)}, {"a1-vector", Rational(2)}};
    auto it = defaults.find(cfg.builtin);
    if (it == defaults.end())
        throw UsageError("--target-length is required for this module");
    return it->second;
}

std::vector<std::pair<int, int>> parse_rows(const std::string& s)
{
    std::vector<std::pair<int, int>> rows;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.empty())
            continue;
        auto comma = item.find(',');
        if (comma == std::string::npos)
            throw UsageError("probe rows look like 1,2;8,8;5,8");
        rows.emplace_back(std::stoi(item.substr(0, comma)), std::stoi(item.substr(comma + 1)));
    }
    return rows;
}

std::vector<std::string> matrix_lines(const TensorMatrix& M, const std::string& name)
{
    std::vector<std::string> out;
    int n = M.dim;
    for (size_t r = 0; r < M.m.size(); ++r)
        for (const auto& [c, v] : M.m.row(r)) {
            std::ostringstream os;
            os << name << "^{" << r / n + 1 << r % n + 1 << "}_{" << c / n + 1 << c % n + 1 << "} = " << v.str();
            out.push_back(os.str());
        }
    return out;
}

MinPolyResult compute_minpoly(const JobConfig& cfg, const TensorMatrix& R)
{
    TensorMatrix PR = braiding(R);
    MinPolyResult mp;
    if (cfg.method == "generic") {
        mp = minpoly_generic(PR);
    } else if (cfg.method == "probe") {
        if (cfg.probe_rows.empty() && cfg.builtin != "b3-spin")
            throw UsageError("--probe-rows is required for this module");
        auto rows = parse_rows(cfg.probe_rows.empty() ? "1,2;8,8;5,8" : cfg.probe_rows);
        int deg = cfg.degree > 0 ? cfg.degree : minpoly_generic(PR).degree;
        mp = minpoly_probe(PR, deg, rows, true);
    } else {
        throw UsageError("--method must be generic or probe");
    }
    attach_roots(mp);
    return mp;
}

int cmd_build(const JobConfig& cfg)
{
    RMatrixBundle b = load_bundle(cfg);
    if (!cfg.emit_module.empty())
        write_json(cfg.emit_module, to_json(b.module));
    if (!cfg.emit_roots.empty())
        write_json(cfg.emit_roots, roots_to_json(b.positive_root_order));
    const TensorMatrix& M = pick(b, cfg.convention);
    json rec = {{"module", b.module.name},
                {"convention", cfg.convention},
                {"fingerprint", fingerprint(M.m)},
                {"matrix", to_json(M)}};
    std::vector<std::string> text = {"module " + b.module.name + ", convention " + cfg.convention,
                                     "nnz " + std::to_string(M.m.nnz()) + ", fingerprint " + fingerprint(M.m)};
    auto lines = matrix_lines(M, "R");
    text.insert(text.end(), lines.begin(), lines.end());
    emit(cfg, rec, text);
    return 0;
}

int cmd_check(const JobConfig& cfg)
{
    TensorMatrix R;
    std::optional<RMatrixBundle> bundle;
    if (!cfg.matrix_path.empty()) {
        json j = read_json(cfg.matrix_path);
        R = tensor_from_json(j.contains("matrix") ? j.at("matrix") : j);
    } else {
        bundle = load_bundle(cfg);
        R = pick(*bundle, cfg.convention);
    }
    bool want_qybe = cfg.qybe || cfg.all, want_frt = cfg.frt_condition || cfg.all;
    bool want_ids = cfg.identity_suite || cfg.all, want_anti = cfg.antipode || cfg.all;
    if (!(want_qybe || want_frt || want_ids || want_anti))
        want_qybe = true;

    bool ok = true;
    json rec = json::object();
    std::vector<std::string> text;
    auto line = [&](const std::string& name, bool pass, const std::string& extra = "") {
        text.push_back(std::string(pass ? "PASS " : "FAIL ") + name + (extra.empty() ? "" : "  " + extra));
    };
    if (want_qybe) {
        auto res = qybe_residual(R);
        bool pass = res.m.is_zero();
        ok &= pass;
        rec["qybe"] = {{"pass", pass}, {"residual_nnz", res.m.nnz()}};
        line("qybe", pass, pass ? "" : "residual nnz " + std::to_string(res.m.nnz()));
    }
    if (want_frt || want_ids || want_anti) {
        DerivedMatrices d = derive(R);
        auto inv = transpose_invertibility(d);
        if (want_frt) {
            auto f = frt_condition(d);
            ok &= f.ok && inv.ok;
            rec["frt_condition"] = to_json(f);
            line("transposes-invertible", inv.ok);
            line("frt-condition", f.ok, f.ok ? "const " + f.constant.str() : f.detail);
        }
        auto run = [&](const std::string& key, const IdentityReport& r) {
            ok &= r.ok();
            rec[key] = to_json(r);
            for (const auto& c : r.checks) {
                if (c.informational)
                    text.push_back(std::string(c.pass ? "info " : "info-fail ") + c.name +
                                   (c.witness.empty() ? "" : "  " + c.witness));
                else
                    line(c.name, c.pass, c.witness);
            }
        };
        if (want_ids)
            run("identity_suite", identity_suite(d));
        if (want_anti) {
            run("antipode", antipode_identities(d));
            run("matrix3", matrix3_consistency(d));
        }
    }
    if (cfg.all && bundle) {
        auto bc = verify_bundle(*bundle);
        auto sym = symmetry_check(*bundle);
        ok &= bc.all() && sym.symmetric;
        line("bundle", bc.all(), bc.detail);
        line("pr-symmetric", sym.symmetric, sym.symmetric ? "" : std::to_string(sym.asymmetric_entries) + " entries");
        rec["bundle"] = {{"pass", bc.all()}, {"pr_symmetric", sym.symmetric}};
    }
    rec["ok"] = ok;
    emit(cfg, rec, text);
    return ok ? 0 : 1;
}

int cmd_minpoly(const JobConfig& cfg)
{
    RMatrixBundle b = load_bundle(cfg);
    MinPolyResult mp = compute_minpoly(cfg, pick(b, cfg.convention));
    json rec = to_json(mp);
    rec["module"] = b.module.name;
    rec["method"] = cfg.method;
    std::vector<std::string> text = {"module " + b.module.name + ", method " + cfg.method,
                                     "degree " + std::to_string(mp.degree), "p(t) = " + poly_str(mp.coefficients)};
    for (size_t k = 0; k < mp.elementary_symmetric.size(); ++k)
        text.push_back("Delta_" + std::to_string(k + 1) + " = " + mp.elementary_symmetric[k].str());
    for (const auto& x : mp.eigenvalues)
        text.push_back("eigenvalue " + x.str());
    if (!mp.probe_rows_used.empty()) {
        std::string s = "probe rows";
        for (auto [a, c] : mp.probe_rows_used)
            s += " (" + std::to_string(a) + std::to_string(c) + ")";
        text.push_back(s);
    }
    emit(cfg, rec, text);
    return 0;
}

struct Pipeline {
    RMatrixBundle b;
    MinPolyResult mp;
    NormalizationData nd;
};

Pipeline run_pipeline(const JobConfig& cfg)
{
    Pipeline p{load_bundle(cfg), {}, {}};
    p.mp = compute_minpoly(cfg, p.b.r_paper);
    p.nd = normalization_for(p.b, p.mp, target_for(cfg));
    return p;
}

int cmd_normalize(const JobConfig& cfg)
{
    Pipeline p = run_pipeline(cfg);
    const auto& nd = p.nd;
    json ev = json::array();
    std::vector<std::string> text = {
        "module " + p.b.module.name, "(mu,mu) = " + rational_str(nd.mu_pairing) + " at index " + std::to_string(nd.mu_index),
        "target (alpha,alpha) = " + rational_str(nd.target_root_length_sq), "lambda = " + nd.lambda.str()};
    int sgn = 0;
    Rational le = monomial_exponent(nd.lambda, &sgn);
    CoeffElem inv = CoeffElem::qpow(-le, sgn);
    for (const auto& x : p.mp.eigenvalues) {
        ev.push_back((x * inv).str());
        text.push_back("normalized eigenvalue " + (x * inv).str());
    }
    if (nd.normalized_eigenvalue_index < 0)
        text.push_back("no eigenvalue becomes -1");
    json rec = {{"module", p.b.module.name},
                {"lambda", to_json(nd.lambda)},
                {"lambda_text", nd.lambda.str()},
                {"mu_pairing", rational_str(nd.mu_pairing)},
                {"target_root_length_sq", rational_str(nd.target_root_length_sq)},
                {"normalized_eigenvalue_index", nd.normalized_eigenvalue_index},
                {"normalized_eigenvalues", ev}};
    emit(cfg, rec, text);
    return nd.normalized_eigenvalue_index < 0 ? 1 : 0;
}

int cmd_rprime(const JobConfig& cfg)
{
    Pipeline p = run_pipeline(cfg);
    RPrimePair rp = make_rprime(p.b, p.mp, p.nd.lambda);
    auto checks = check_rprime(rp);
    json ex = json::array();
    std::vector<std::string> text = {"module " + p.b.module.name, "lambda = " + rp.lambda.str()};
    std::string e = "R' = ";
    size_t m = rp.expansion.size() - 1;
    for (size_t k = 0; k <= m; ++k) {
        ex.push_back(rp.expansion[k].str());
        std::string term = k == m ? "P" : (m - 1 - k == 0 ? "R" : "R Rh^" + std::to_string(m - 1 - k));
        e += (k ? " + (" : "(") + rp.expansion[k].str() + ") " + term;
    }
    text.push_back(e);
    text.push_back(std::string(checks.all() ? "PASS" : "FAIL") + " (PR+1)(PR'-1)=0, mixed and twisted relations");
    auto lines = matrix_lines(rp.Rprime, "R'");
    text.insert(text.end(), lines.begin(), lines.end());
    json rec = {{"module", p.b.module.name},
                {"lambda", rp.lambda.str()},
                {"expansion", ex},
                {"checks",
                 {{"quadratic", checks.quadratic},
                  {"mixed_a", checks.mixed_a},
                  {"mixed_b", checks.mixed_b},
                  {"twisted", checks.twisted}}},
                {"R", to_json(rp.R)},
                {"Rprime", to_json(rp.Rprime)}};
    emit(cfg, rec, text);
    return checks.all() ? 0 : 1;
}

int cmd_relations(const JobConfig& cfg)
{
    Pipeline p = run_pipeline(cfg);
    RPrimePair rp = make_rprime(p.b, p.mp, p.nd.lambda);
    auto rels = braided_relations(rp);
    auto cv = covector_check(rp);
    json arr = json::array();
    std::vector<std::string> text;
    for (const auto& r : rels) {
        arr.push_back(to_json(r));
        if (!r.tautology)
            text.push_back(r.str());
    }
    text.push_back("covector check (" + cv.exchange + "): " + std::to_string(cv.pairs - cv.failures) + "/" +
                   std::to_string(cv.pairs) + " relations hold");
    json fails = json::array();
    for (auto [i, j] : cv.failing)
        fails.push_back({i, j});
    json rec = {{"module", p.b.module.name},
                {"relations", arr},
                {"covector", {{"pairs", cv.pairs}, {"failures", cv.failures}, {"failing", fails}}}};
    emit(cfg, rec, text);
    return 0;
}

int cmd_report(const JobConfig& cfg)
{
    Pipeline p = run_pipeline(cfg);
    RPrimePair rp = make_rprime(p.b, p.mp, p.nd.lambda);
    DBosReport rep = cartan_extract(p.b, p.nd.lambda, p.b.module.dim, p.nd.target_root_length_sq);
    serre_chains(rep, p.b, rp);
    relation_report(rep, p.b, rp);
    json rec = to_json(rep);
    std::vector<std::string> text = rep.relations;
    LClaim claim = builtin_lclaim(p.b.module.name);
    if (!claim.mplus.empty() || !claim.mminus.empty()) {
        auto lf = lfunctional_check(p.b, claim);
        rec["lfunctional"] = to_json(lf);
        text.push_back(std::string("diagonal (m+)^j_j = K_{-mu_j}: ") + (lf.diagonal_ok ? "yes" : "no"));
        for (const auto& e : lf.entries)
            text.push_back(std::string("(m") + e.sign + ")^" + std::to_string(e.i) + "_" + std::to_string(e.j) + " " +
                           (e.match ? "matches the shipped table" : "differs: " + e.detail));
    }
    emit(cfg, rec, text);
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"R-matrices, FRT checks and double-bosonization for small quantum groups"};
    app.require_subcommand(1);
    JobConfig cfg;

    auto common = [&](CLI::App* sc) {
        sc->add_option("--builtin", cfg.builtin, "b3-spin | a1-spin32 | a1-vector");
        sc->add_option("--module", cfg.module_path, "module record file");
        sc->add_option("--roots", cfg.roots_path, "root-vector record file");
        sc->add_option("--variant", cfg.variant, "shipped root data variant");
        sc->add_option("--convention", cfg.convention, "paper | std");
        sc->add_option("--out", cfg.out, "output file (stdout when omitted)");
        sc->add_option("--format", cfg.format, "record | text")->check(CLI::IsMember({"record", "text"}));
        sc->add_flag("--allow-qybe-failure", cfg.allow_qybe_failure, "keep R even when QYBE fails");
    };
    auto pipeline_opts = [&](CLI::App* sc) {
        sc->add_option("--method", cfg.method, "generic | probe");
        sc->add_option("--probe-rows", cfg.probe_rows, "rows of PR for the probe method, e.g. 1,2;8,8;5,8");
        sc->add_option("--degree", cfg.degree, "degree for the probe method");
        sc->add_option("--target-length", cfg.target_length, "(alpha,alpha) of the new simple root");
    };

    auto* build = app.add_subcommand("build", "build R_VV");
    common(build);
    build->add_option("--emit-module", cfg.emit_module, "also write the module record");
    build->add_option("--emit-roots", cfg.emit_roots, "also write the root-vector record");

    auto* check = app.add_subcommand("check", "run check suites");
    common(check);
    check->add_option("--matrix", cfg.matrix_path, "check a stored matrix instead of building");
    check->add_flag("--qybe", cfg.qybe);
    check->add_flag("--frt-condition", cfg.frt_condition);
    check->add_flag("--identity-suite", cfg.identity_suite);
    check->add_flag("--antipode", cfg.antipode);
    check->add_flag("--all", cfg.all);

    std::map<CLI::App*, std::function<int(const JobConfig&)>> handlers = {{build, cmd_build}, {check, cmd_check}};
    for (auto [name, fn, help] : std::vector<std::tuple<std::string, std::function<int(const JobConfig&)>, std::string>>{
             {"minpoly", cmd_minpoly, "minimal polynomial of PR"},
             {"normalize", cmd_normalize, "normalization constant"},
             {"rprime", cmd_rprime, "the partner matrix R'"},
             {"relations", cmd_relations, "braided vector algebra relations"},
             {"report", cmd_report, "enlarged quantum group report"}}) {
        auto* sc = app.add_subcommand(name, help);
        common(sc);
        pipeline_opts(sc);
        handlers[sc] = fn;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        for (auto& [sc, fn] : handlers)
            if (sc->parsed())
                return fn(cfg);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}

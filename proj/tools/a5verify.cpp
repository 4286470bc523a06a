// a5verify: command-line front end for the verification toolkit.
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "a5v/fpgroups.hpp"
#include "a5v/gcomplex.hpp"
#include "a5v/moduli.hpp"
#include "a5v/quat.hpp"

using namespace a5v;
using nlohmann::json;

namespace {

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

struct Report {
    std::string command;
    json inputs = json::object();
    json checks = json::array();
    json values = json::object();
    bool failed = false;

    void check(const std::string& name, bool pass, const std::string& reason = "") {
        json c{{"name", name}, {"status", pass ? "pass" : "fail"}};
        if (!reason.empty())
            c["reason"] = reason;
        checks.push_back(c);
        failed = failed || !pass;
    }
    void skip(const std::string& name, const std::string& reason) {
        checks.push_back({{"name", name}, {"status", "skipped"}, {"reason", reason}});
    }

    json to_json(double seconds) const {
        std::ostringstream digest;
        digest << std::hex << std::setw(16) << std::setfill('0') << fnv1a(command + inputs.dump());
        return {{"schema", "report-v1"}, {"command", command},         {"inputs", inputs},
                {"inputs_digest", digest.str()}, {"checks", checks}, {"values", values},
                {"wall_time_s", seconds}};
    }

    void print_text(std::ostream& os, double seconds) const {
        os << "command: " << command << "\n";
        for (const auto& [k, v] : values.items()) {
            if (v.is_string())
                os << k << ": " << v.get<std::string>() << "\n";
            else
                os << k << ": " << v.dump(2) << "\n";
        }
        for (const auto& c : checks) {
            std::string status = c["status"];
            for (auto& ch : status)
                ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
            os << status << " " << c["name"].get<std::string>();
            if (c.contains("reason"))
                os << ": " << c["reason"].get<std::string>();
            os << "\n";
        }
        os << "time: " << std::fixed << std::setprecision(3) << seconds << " s\n";
    }
};

struct Options {
    bool json_out = false;
    int digits = 30;
};

json exact_and_decimal(const AN& x, int digits) { return {{"exact", x.to_string()}, {"decimal", x.to_decimal(digits)}}; }

json dense_json(const DenseMat<AN>& m) {
    json rows = json::array();
    for (const auto& r : m) {
        json row = json::array();
        for (const auto& x : r)
            row.push_back(x.to_string());
        rows.push_back(row);
    }
    return rows;
}

Presentation load_presentation(const std::string& spec) {
    if (spec.rfind("builtin:", 0) == 0) {
        try {
            return builtin_presentation(spec.substr(8));
        } catch (const std::invalid_argument& e) {
            throw InputError(e.what());
        }
    }
    return Presentation::parse(read_file(spec));
}

std::vector<FreeWord> parse_word_list(const std::string& text) {
    std::vector<FreeWord> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (item.find_first_not_of(" \t") != std::string::npos)
            out.push_back(parse_word(item));
    return out;
}

OrbitComplex load_complex(const std::string& file, const std::string& builtin) {
    if (!builtin.empty()) {
        if (builtin == "poincare")
            return poincare_complex();
        if (builtin == "gamma-os-a5")
            return gamma_os_a5();
        throw InputError("unknown builtin complex " + builtin);
    }
    if (file.empty())
        throw InputError("a complex file or --builtin is required");
    return OrbitComplex::from_json(json::parse(read_file(file)));
}

PermGroup parse_subgroup(const std::string& text, int degree) {
    // "(1,2)(3,4);(1,2,3)": generators separated by ';'
    std::vector<Perm> gens;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';'))
        if (item.find_first_not_of(" \t") != std::string::npos)
            gens.push_back(Perm::parse_cycles(item, degree));
    return PermGroup::closure(std::move(gens), degree);
}

// ---------------------------------------------------------------------------

void cmd_verify_moduli(Report& r, int k, bool symbolic, const std::string& at) {
    r.inputs = {{"k", k}, {"mode", symbolic || at.empty() ? "symbolic" : at}};
    std::vector<RelatorResult> res;
    if (symbolic || at.empty()) {
        res = verify_relations(build_symbolic(k));
    } else {
        ModuliPoint z;
        if (at == "zbad") {
            z.circle = solve_universal().point.circle;
            z.extras.assign(k, Mat3<AN>::identity());
        } else {
            z = ModuliPoint::from_json(json::parse(read_file(at)));
        }
        res = verify_relations(build_generators(z));
    }
    json detail = json::array();
    for (const auto& x : res) {
        r.check("relator " + x.relator, x.pass, x.pass ? "" : std::to_string(x.residual.size()) + " nonzero entries");
        detail.push_back({{"relator", x.relator}, {"residual", x.residual}});
    }
    r.values["relators"] = detail;
}

void cmd_solve_universal(Report& r, const Options& o) {
    r.inputs = {{"digits", o.digits}};
    UniversalSolution s = solve_universal();
    CirclePoint golden = golden_zbad();
    static const char* names[] = {"alpha1", "beta1", "alpha2", "beta2", "alpha3", "beta3"};
    json point = json::object();
    bool match = true, signs = true;
    for (int i = 0; i < 6; ++i) {
        point[names[i]] = exact_and_decimal(s.point.circle[i], o.digits);
        match = match && s.point.circle[i] == golden[i];
        signs = signs && s.point.circle[i].sign() == (i % 2 == 0 ? -1 : 1);
    }
    r.values["point"] = point;
    r.values["certificate"] = s.certificate();
    r.check("all entries of eqX0 and eqBAC3 vanish", s.residuals.empty());
    r.check("circle relations", s.circles_hold);
    r.check("matches the reference values", match);
    r.check("signs: alpha < 0, beta > 0", signs);
}

void cmd_jacobian(Report& r, const Options& o, int k, const std::string& method) {
    if (method != "closed" && method != "jet" && method != "both")
        throw InputError("--method must be closed, jet or both");
    r.inputs = {{"k", k}, {"method", method}};
    CirclePoint z = golden_zbad();
    const auto& c = named_constants();
    DenseMat<AN> closed = jacobian_closed_form(z, k);
    std::optional<DenseMat<AN>> jet;
    if (method != "closed") {
        QuatModel m(make_t_bad(z, k));
        r.values["tower_degree"] = m.tower()->degree();
        r.values["sign_mask"] = m.sign_mask();
        jet = jacobian_from_jets(m);
        r.values["jet"] = dense_json(*jet);
    }
    if (method != "jet") {
        r.values["closed_form"] = dense_json(closed);
        const AN half(Rational(1, 2));
        bool cols = closed[0][0] == AN(0) && closed[1][0] == AN(0) && closed[2][0] == half &&
                    closed[0][1] == -z[1] * Rational(1, 2) && closed[1][1] == -z[0] * Rational(1, 2) &&
                    closed[2][1] == AN(0) && closed[0][2] == AN(0) && closed[1][2] == -c.sqrt6 * Rational(1, 6) &&
                    closed[2][2] == c.sqrt3 * Rational(1, 6);
        r.check("closed-form columns of M", cols);
    }
    const DenseMat<AN>& m = jet ? *jet : closed;
    AN det = dense_det(m);
    r.values["det"] = exact_and_decimal(det, o.digits);
    r.check("det = sqrt6 beta1 / 24", det == c.sqrt6 * z[1] * Rational(1, 24));
    r.check("det != 0", det.sign() != 0);
    if (method == "both")
        r.check("closed form equals jets entrywise", closed == *jet);
}

void cmd_coset_enum(Report& r, const std::string& file, const std::string& subgroup, std::size_t max_cosets) {
    r.inputs = {{"presentation", file}, {"subgroup", subgroup}, {"max_cosets", max_cosets}};
    Presentation p = load_presentation(file);
    auto sub = parse_word_list(subgroup);
    EnumerationStats stats;
    CosetTable t = todd_coxeter(p, sub, max_cosets, &stats);
    r.values["index"] = t.size();
    if (sub.empty())
        r.values["order"] = t.size();
    r.values["cosets_defined"] = stats.defined;
    r.values["max_live"] = stats.max_live;
    std::string err = t.self_check(p, sub);
    r.check("coset table self-check", err.empty(), err);
}

void cmd_brown(Report& r, const std::string& file, const std::string& builtin, bool enumerate,
               const std::string& adjoin) {
    r.inputs = {{"file", file}, {"builtin", builtin}, {"enumerate", enumerate}, {"adjoin", adjoin}};
    OrbitComplex c = load_complex(file, builtin);
    BrownPresentation bp = brown_presentation(c);
    r.values["raw"] = bp.raw.to_text();
    r.values["simplified"] = bp.simplified.to_text();
    json faces = json::array();
    for (std::size_t i = 0; i < bp.face_words.size(); ++i)
        faces.push_back({{"raw", bp.face_words[i].to_string()}, {"simplified", bp.simplified_face_words[i].to_string()}});
    r.values["face_words"] = faces;
    r.values["full"] = bp.full().to_text();
    json tree = json::array();
    for (std::size_t j = 0; j < c.edges().size(); ++j)
        if (bp.choices.in_tree[j])
            tree.push_back("e" + c.edges()[j].name);
    r.values["tree"] = tree;

    int degree = c.group().degree();
    bool kills = true;
    for (const auto& w : bp.raw.relators)
        kills = kills && eval_perm_word(bp.phi, w, degree).is_identity();
    for (const auto& w : bp.face_words)
        kills = kills && eval_perm_word(bp.phi, w, degree).is_identity();
    r.check("phi-bar kills every relator", kills);
    if (enumerate) {
        Presentation full = bp.full();
        r.values["order"] = todd_coxeter(full, {}).size();
        if (!adjoin.empty()) {
            for (const auto& w : parse_word_list(adjoin))
                full.relators.push_back(w);
            r.values["order_adjoined"] = todd_coxeter(full, {}).size();
        }
    }
}

void cmd_complex(Report& r, const std::string& file, const std::string& builtin, const std::vector<std::string>& op) {
    if (op.empty())
        throw InputError("--op is required");
    r.inputs = {{"file", file}, {"builtin", builtin}, {"op", op}};
    OrbitComplex c = load_complex(file, builtin);
    const std::string& what = op[0];
    if (what == "homology") {
        HomologyResult h = homology(c);
        r.values["homology"] = h.to_json();
        r.values["summary"] = h.to_string();
    } else if (what == "euler") {
        CellComplex x = expand(c);
        r.values["cells"] = {x.count(0), x.count(1), x.count(2)};
        r.values["euler"] = x.euler();
        r.check("d1 d2 = 0", x.count(2) == 0 || x.count(0) == 0 || (x.d1 * x.d2).is_zero());
    } else if (what == "fixed") {
        if (op.size() != 2)
            throw InputError("--op fixed needs a subgroup, e.g. \"(3,5,4)\"");
        PermGroup h = parse_subgroup(op[1], c.group().degree());
        if (!h.is_subgroup_of(c.group()))
            throw InputError("subgroup is not contained in the ambient group");
        CellComplex f = fixed_subcomplex(c, h);
        r.values["cells"] = {f.count(0), f.count(1), f.count(2)};
        if (f.empty()) {
            r.values["summary"] = "empty";
        } else {
            HomologyResult hr = homology(f);
            r.values["homology"] = hr.to_json();
            r.values["summary"] = hr.to_string();
        }
        r.check("fixed set acyclic or empty", f.empty() || homology(f).acyclic());
    } else if (what == "reduced") {
        r.check("reduced", is_reduced(c));
        r.check("vertex stabilizers incomparable", stabilizer_incomparability(expand(c)));
    } else if (what == "indices" || what == "lemma23") {
        auto lat = subgroup_lattice(c.group());
        auto fam = solvable_family(lat);
        auto rows = verify_lemma23(c, lat, fam, what == "indices");
        json out = json::array();
        for (const auto& row : rows) {
            std::vector<std::string> gens;
            for (const auto& g : row.representative.generators())
                gens.push_back(g.to_cycles());
            out.push_back({{"order", row.representative.order()},
                           {"generators", gens},
                           {"index", row.index.get_str()},
                           {"orbit_counts", row.orbit_counts},
                           {"alternating_sum", row.alternating}});
            if (what == "lemma23")
                r.check("order " + std::to_string(row.representative.order()) + " class: i_F(H) = sum (-1)^n c_n(H)",
                        row.match());
        }
        r.values["rows"] = out;
    } else {
        throw InputError("unknown --op " + what);
    }
}

void cmd_kernel_check(Report& r, const std::string& word, int k) {
    r.inputs = {{"word", word}, {"k", k}};
    FreeWord w = parse_word(word);
    Perm image = phi_eval(w);
    r.values["phi"] = image.to_cycles();
    bool in_kernel = image.is_identity();
    r.check("phi(w) = 1", in_kernel);
    if (!in_kernel) {
        r.skip("derivatives at t_bad are pure", "word is not in the kernel");
        return;
    }
    QuatModel m(make_t_bad(golden_zbad(), k));
    PurityReport p = purity(m, w);
    r.values["value"] = p.value.to_string();
    r.check("lifted value is real", p.value.x() == AN(0) && p.value.y() == AN(0) && p.value.z() == AN(0));
    r.check("derivatives at t_bad are pure", p.all_pure());
}

void cmd_exponent_matrix(Report& r, const std::string& file, const std::string& vars, bool normalize) {
    r.inputs = {{"presentation", file}, {"vars", vars}, {"normalize", normalize}};
    Presentation p = load_presentation(file);
    std::vector<std::string> names;
    std::stringstream ss(vars);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            names.push_back(item);
    IntMat m = exponent_matrix(p.relators, names);
    r.values["matrix"] = m.to_json();
    if (m.rows() == m.cols()) {
        RankDet rd = int_rank_det(m);
        r.values["det"] = rd.det->get_str();
        r.check("unimodular", abs(*rd.det) == 1);
    } else {
        r.skip("unimodular", "matrix is not square");
    }
    if (normalize) {
        Normalization n = normalize_relators(p.relators, names);
        json log = json::array();
        for (const auto& s : n.log)
            log.push_back({{"op", s.op}, {"i", s.i}, {"j", s.j}});
        json rel = json::array();
        for (const auto& w : n.relators)
            rel.push_back(w.to_string());
        r.values["normalized"] = rel;
        r.values["log"] = log;
        r.check("normalized exponent matrix is the identity",
                exponent_matrix(n.relators, names) == IntMat::identity(names.size()));
    }
}

void cmd_word_identity(Report& r, const std::string& file, const std::string& lhs, const std::string& rhs) {
    r.inputs = {{"presentation", file}, {"lhs", lhs}, {"rhs", rhs}};
    Presentation p = load_presentation(file);
    r.check(lhs + " = " + rhs, verify_word_identity(p, parse_word(lhs), parse_word(rhs)));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification toolkit for an A5 fixed-point construction"};
    app.require_subcommand(1);
    Options opt;
    app.add_flag("--json", opt.json_out, "Print a JSON report");
    app.add_option("--digits", opt.digits, "Decimal digits in renderings")->check(CLI::Range(1, 1000));

    int k = 0;
    bool symbolic = false;
    std::string at, method = "both", file, subgroup, builtin, vars, word, lhs, rhs, adjoin;
    std::size_t max_cosets = kDefaultMaxCosets;
    bool normalize = false, enumerate = false;
    std::vector<std::string> op;

    auto* vm = app.add_subcommand("verify-moduli", "Check the relators of Gamma_k on the moduli");
    vm->add_option("--k", k)->check(CLI::NonNegativeNumber);
    vm->add_flag("--symbolic", symbolic);
    vm->add_option("--at", at, "zbad or a point file");
    vm->add_flag("--json", opt.json_out);

    auto* su = app.add_subcommand("solve-universal", "Forced elimination for the universal point");
    su->add_flag("--json", opt.json_out);
    su->add_option("--digits", opt.digits)->check(CLI::Range(1, 1000));

    auto* jc = app.add_subcommand("jacobian", "Jacobian of (X0, (BAC)^3, X1..Xk) at t_bad");
    jc->add_option("--k", k)->check(CLI::NonNegativeNumber);
    jc->add_option("--method", method, "closed, jet or both");
    jc->add_flag("--json", opt.json_out);

    auto* ce = app.add_subcommand("coset-enum", "Todd-Coxeter enumeration");
    ce->add_option("presentation", file, "FILE or builtin:NAME")->required();
    ce->add_option("--subgroup", subgroup, "comma-separated subgroup generators");
    ce->add_option("--max-cosets", max_cosets);
    ce->add_flag("--json", opt.json_out);

    auto* br = app.add_subcommand("brown", "Presentation of the extension from an orbit complex");
    br->add_option("file", file);
    br->add_option("--builtin", builtin, "poincare or gamma-os-a5");
    br->add_flag("--enumerate", enumerate, "Enumerate the full presentation");
    br->add_option("--adjoin", adjoin, "extra relators for a second enumeration");
    br->add_flag("--json", opt.json_out);

    auto* cx = app.add_subcommand("complex", "Homology and structure of an orbit complex");
    cx->add_option("file", file);
    cx->add_option("--builtin", builtin, "poincare or gamma-os-a5");
    cx->add_option("--op", op, "homology | fixed SUBGROUP | reduced | euler | indices | lemma23")
        ->expected(1, 2)
        ->required();
    cx->add_flag("--json", opt.json_out);

    auto* kc = app.add_subcommand("kernel-check", "phi(w) = 1 and purity of derivatives at t_bad");
    kc->add_option("word", word)->required();
    kc->add_option("--k", k)->check(CLI::NonNegativeNumber);
    kc->add_flag("--json", opt.json_out);

    auto* em = app.add_subcommand("exponent-matrix", "Exponent-sum matrix of the relators");
    em->add_option("presentation", file, "FILE or builtin:NAME")->required();
    em->add_option("--vars", vars, "comma-separated generators")->required();
    em->add_flag("--normalize", normalize);
    em->add_flag("--json", opt.json_out);

    auto* wi = app.add_subcommand("word-identity", "Check LHS = RHS in a finite presented group");
    wi->add_option("presentation", file, "FILE or builtin:NAME")->required();
    wi->add_option("lhs", lhs)->required();
    wi->add_option("rhs", rhs)->required();
    wi->add_flag("--json", opt.json_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    Report report;
    auto start = std::chrono::steady_clock::now();
    try {
        CLI::App* sub = app.get_subcommands().front();
        report.command = sub->get_name();
        if (sub == vm)
            cmd_verify_moduli(report, k, symbolic, at);
        else if (sub == su)
            cmd_solve_universal(report, opt);
        else if (sub == jc)
            cmd_jacobian(report, opt, k, method);
        else if (sub == ce)
            cmd_coset_enum(report, file, subgroup, max_cosets);
        else if (sub == br)
            cmd_brown(report, file, builtin, enumerate, adjoin);
        else if (sub == cx)
            cmd_complex(report, file, builtin, op);
        else if (sub == kc)
            cmd_kernel_check(report, word, k);
        else if (sub == em)
            cmd_exponent_matrix(report, file, vars, normalize);
        else if (sub == wi)
            cmd_word_identity(report, file, lhs, rhs);
    } catch (const BudgetExhausted& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (opt.json_out)
        std::cout << report.to_json(seconds).dump(2) << "\n";
    else
        report.print_text(std::cout, seconds);
    return report.failed ? 1 : 0;
}

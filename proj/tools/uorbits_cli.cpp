// command line front end: group inspection, actions, orbits, stabilizers,
// verification suites and the supercharacter report, all emitting canonical JSON

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "uorbits/acceptance.hpp"

using namespace uorbits;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitBudget = 3;

struct CommonOpts {
    std::string type = "B";
    int n = 2;
    int p = 3;
    int k = 1;
    int workers = 1;
    int theta_scale = 1;
    std::string suppl_parse = "conjunctive";
    std::string out;
    bool csv = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--type", o.type, "Lie type: B, C or D")->check(CLI::IsMember({"B", "C", "D"}));
    cmd->add_option("--n", o.n, "rank");
    cmd->add_option("--p", o.p, "odd prime characteristic");
    cmd->add_option("--k", o.k, "field extension degree");
    cmd->add_option("--workers", o.workers, "worker threads for the heavy suites");
    cmd->add_option("--theta-scale", o.theta_scale, "nonzero scale c in theta = zeta^(c Tr)");
    cmd->add_option("--suppl-parse", o.suppl_parse,
                    "reading of the supplementary-condition rule")
        ->check(CLI::IsMember({"conjunctive", "disjunctive"}));
    cmd->add_option("--out", o.out, "write the JSON result to a file");
    cmd->add_flag("--csv", o.csv, "emit Gram matrices as CSV");
}

Budgets budgets_from_env() {
    Budgets b;
    auto read = [](const char* name, std::uint64_t& slot) {
        if (const char* v = std::getenv(name)) slot = std::strtoull(v, nullptr, 10);
    };
    read("UORBITS_GROUP_BUDGET", b.group);
    read("UORBITS_CHARSPACE_BUDGET", b.charspace);
    read("UORBITS_ORBIT_BUDGET", b.orbit);
    read("UORBITS_SUPERCLASS_BUDGET", b.superclass);
    read("UORBITS_PROBE_BUDGET", b.probe);
    return b;
}

SupplParse parse_of(const CommonOpts& o) {
    return o.suppl_parse == "disjunctive" ? SupplParse::Disjunctive : SupplParse::Conjunctive;
}

Context context_of(const CommonOpts& o) {
    return make_context(lie_type_from_char(o.type[0]), o.n, o.p, o.k, budgets_from_env(),
                        o.theta_scale);
}

void emit(const CommonOpts& o, const json& j) {
    std::string text = j.dump(2) + "\n";
    if (o.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(o.out, std::ios::binary);
        f << text;
    }
}

void emit_csv(const CommonOpts& o, const std::string& text) {
    if (o.out.empty()) std::cout << text;
    else std::ofstream(o.out, std::ios::binary) << text;
}

int cmd_group_info(const CommonOpts& o) {
    Context ctx = context_of(o);
    json j;
    j["type"] = std::string(1, lie_type_char(ctx.tp.type));
    j["n"] = ctx.tp.n;
    j["N"] = ctx.tp.N;
    j["q"] = ctx.q();
    j["order"] = ctx.group_order();
    j["pUP_size"] = ctx.m();
    j["regions"] = {{"pUP", positions_json(ctx.reg.pUP)}, {"UP", positions_json(ctx.reg.UP)},
                    {"CC", positions_json(ctx.reg.CC)},   {"RP", positions_json(ctx.reg.RP)},
                    {"tril", positions_json(ctx.reg.tril)}, {"trir", positions_json(ctx.reg.trir)}};
    SignMap sm = rp_sign_probe(ctx);
    json signs = json::array();
    for (size_t t = 0; t < ctx.reg.RP.size(); ++t)
        signs.push_back({ctx.reg.RP[t].i, ctx.reg.RP[t].j, sm.sign[t],
                         json(sm.sum_coeffs[t])});
    j["rp_recursion"] = signs;
    emit(o, j);
    return 0;
}

int cmd_act(const CommonOpts& o, const std::string& label, const std::string& gen, bool left) {
    Context ctx = context_of(o);
    CharLabel A = label_from_string(ctx, label);
    size_t c1 = gen.find(','), c2 = gen.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw CLI::ValidationError("--gen must look like i,j,a");
    int i = std::stoi(gen.substr(0, c1));
    int j = std::stoi(gen.substr(c1 + 1, c2 - c1 - 1));
    long long a = std::stoll(gen.substr(c2 + 1));
    Mat x = root_elem(ctx, i, j, ctx.fq.from_int(a));
    MonomialResult r = left ? left_monomial(ctx, x, A) : monomial_right(ctx, A, x);
    json out;
    out["input"] = label_to_string(ctx, A);
    out["generator"] = {i, j, a};
    out["side"] = left ? "left" : "right";
    out["exponent"] = r.exponent;
    out["label"] = label_to_string(ctx, r.label);
    emit(o, out);
    return 0;
}

int cmd_orbits(const CommonOpts& o, const std::string& mode, const std::string& label,
               bool members) {
    Context ctx = context_of(o);
    SupplParse parse = parse_of(o);
    if (mode == "classify") {
        CharLabel A = label_from_string(ctx, label);
        json j;
        j["label"] = label_to_string(ctx, A);
        j["classification"] = classification_json(ctx, classify(ctx, A, parse));
        emit(o, j);
        return 0;
    }
    if (!label.empty() && label != "0") {
        OrbitRecord O = enumerate_orbit(ctx, label_from_string(ctx, label), parse);
        emit(o, orbit_json(ctx, O, members));
        return 0;
    }
    json arr = json::array();
    for (const auto& O : orbit_partition(ctx, parse)) arr.push_back(orbit_json(ctx, O, members));
    json j;
    j["config"] = config_name(ctx);
    j["orbits"] = arr;
    emit(o, j);
    return 0;
}

int cmd_stab(const CommonOpts& o, const std::string& label, int row, bool brute_check) {
    Context ctx = context_of(o);
    SupplParse parse = parse_of(o);
    CharLabel A = label_from_string(ctx, label);
    json j;
    j["label"] = label_to_string(ctx, A);
    if (row > 0) {
        RowStab rs = row_stab(ctx, A, row, parse);
        json rj;
        rj["row"] = rs.row;
        rj["kind"] = rs.kind == RowStabKind::Trivial ? "trivial"
                     : rs.kind == RowStabKind::AntiDiag ? "antidiagonal"
                                                        : "solution-space";
        rj["order"] = rs.order;
        rj["free_cols"] = rs.free_cols;
        json basis = json::array();
        for (const auto& alpha : rs.basis) {
            json vec = json::array();
            for (auto v : alpha) vec.push_back(field_elem_json(ctx.fq, v));
            basis.push_back(vec);
        }
        rj["basis"] = basis;
        j["row_stab"] = rj;
    } else {
        std::vector<Mat> st = stab_elements(ctx, A, parse);
        j["order"] = st.size();
        json psis = json::array();
        for (const auto& u : st)
            psis.push_back({label_to_string(ctx, cocycle_f(ctx, u)), psi(ctx, A, u)});
        j["psi_exponents"] = psis;
        if (brute_check) {
            GroupCache gc = build_group_cache(ctx);
            j["brute_order"] = brute_stabilizer(ctx, gc, A).size();
            j["brute_matches"] = j["brute_order"] == j["order"];
        }
    }
    emit(o, j);
    return 0;
}

int cmd_verify(const CommonOpts& o, const std::string& suite, const std::string& pairs_file) {
    Session S = make_session(lie_type_from_char(o.type[0]), o.n, o.p, o.k, o.workers,
                             parse_of(o), o.theta_scale, budgets_from_env());
    std::vector<Transcript> trs;
    if (!pairs_file.empty()) {
        std::ifstream f(pairs_file);
        if (!f) throw std::runtime_error("cannot read pairs file " + pairs_file);
        std::vector<std::pair<CharLabel, CharLabel>> pairs;
        std::string la, lb;
        while (f >> la >> lb)
            pairs.emplace_back(label_from_string(S.ctx, la), label_from_string(S.ctx, lb));
        trs.push_back(verify_pairs(S, pairs));
    }
    auto want = [&](const char* name) {
        return pairs_file.empty() && (suite == name || suite == "all");
    };
    if (want("bijection")) trs.push_back(suite_bijection(S));
    if (want("cocycle")) trs.push_back(suite_cocycle(S));
    if (want("partition")) trs.push_back(suite_partition(S));
    if (want("stab")) trs.push_back(suite_stab(S));
    if (want("aux3")) trs.push_back(suite_aux3(S));
    if (want("main1")) trs.push_back(suite_main1(S));
    if (want("main3")) trs.push_back(suite_main3(S));
    if (want("mackey")) trs.push_back(suite_mackey(S));
    if (want("gram")) trs.push_back(suite_gram(S));
    if (want("superchar")) trs.push_back(suite_superchar(S));
    if (trs.empty()) throw CLI::ValidationError("unknown suite: " + suite);
    json arr = json::array();
    bool pass = true;
    for (const auto& t : trs) {
        arr.push_back(t.to_json());
        if (!t.all_pass()) pass = false;
    }
    json out;
    out["config"] = config_name(S.ctx);
    out["pass"] = pass;
    out["suites"] = arr;
    emit(o, out);
    if (o.csv && suite == "gram") {
        for (const auto& t : trs)
            if (t.suite == "gram" && t.extra.contains("gram")) {
                std::string csv = "rep";
                for (const auto& row : t.extra["gram"])
                    csv += "," + row["rep"].get<std::string>();
                csv += "\n";
                for (const auto& row : t.extra["gram"]) {
                    csv += row["rep"].get<std::string>();
                    for (const auto& v : row["values"]) csv += "," + v.dump();
                    csv += "\n";
                }
                emit_csv(o, csv);
            }
    }
    return pass ? 0 : kExitFail;
}

int cmd_superchar_report(const CommonOpts& o) {
    Session S = make_session(lie_type_from_char(o.type[0]), o.n, o.p, o.k, o.workers,
                             parse_of(o), o.theta_scale, budgets_from_env());
    Transcript t = suite_superchar(S);
    emit(o, t.to_json());
    return t.all_pass() ? 0 : kExitFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact coadjoint-orbit machinery for p-Sylow subgroups of classical groups"};
    app.require_subcommand(1);

    CommonOpts o;

    auto* group = app.add_subcommand("group", "group level information");
    auto* group_info = group->add_subcommand("info", "order, regions and sign map");
    add_common(group_info, o);

    std::string label, gen;
    bool left = false, members = false, brute_check = false;
    int row = 0;

    auto* act = app.add_subcommand("act", "apply one root generator to a label");
    add_common(act, o);
    act->add_option("--label", label, "label in the i,j=v;... grammar")->required();
    act->add_option("--gen", gen, "generator i,j,a")->required();
    act->add_flag("--left", left, "act from the left");

    auto* orbits_cmd = app.add_subcommand("orbits", "orbit enumeration and classification");
    auto* orb_enum = orbits_cmd->add_subcommand("enumerate", "one orbit, or the full partition");
    add_common(orb_enum, o);
    orb_enum->add_option("--label", label, "seed label; omit for the full partition");
    orb_enum->add_flag("--members", members, "include sorted members");
    auto* orb_classify = orbits_cmd->add_subcommand("classify", "classification of one label");
    add_common(orb_classify, o);
    orb_classify->add_option("--label", label)->required();

    auto* stab = app.add_subcommand("stab", "stabilizer of a label");
    add_common(stab, o);
    stab->add_option("--label", label)->required();
    stab->add_option("--row", row, "only the row stabilizer of this row");
    stab->add_flag("--brute-check", brute_check, "compare against brute force");

    std::string suite, pairs_file;
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    add_common(verify, o);
    verify->add_option("suite", suite, "bijection|cocycle|partition|stab|aux3|main1|main3|gram|mackey|superchar|all")
        ->required();
    verify->add_option("--pairs", pairs_file, "file of label pairs, two per line");

    auto* superchar = app.add_subcommand("superchar", "supercharacter reports");
    auto* report = superchar->add_subcommand("report", "full family report");
    add_common(report, o);

    auto* accept = app.add_subcommand("acceptance", "run the acceptance criteria");
    accept->add_option("--workers", o.workers, "worker threads");
    accept->add_option("--out", o.out, "write the JSON result to a file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (group_info->parsed()) return cmd_group_info(o);
        if (act->parsed()) return cmd_act(o, label, gen, left);
        if (orb_enum->parsed()) return cmd_orbits(o, "enumerate", label, members);
        if (orb_classify->parsed()) return cmd_orbits(o, "classify", label, members);
        if (stab->parsed()) return cmd_stab(o, label, row, brute_check);
        if (verify->parsed()) return cmd_verify(o, suite, pairs_file);
        if (report->parsed()) return cmd_superchar_report(o);
        if (accept->parsed()) {
            auto results = run_acceptance(o.workers);
            json arr = json::array();
            bool pass = true;
            for (const auto& r : results) {
                json j;
                j["id"] = r.id;
                j["name"] = r.name;
                j["pass"] = r.pass;
                j["details"] = r.details;
                arr.push_back(j);
                if (!r.pass) pass = false;
                std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.id << ": " << r.name
                          << "\n";
            }
            if (!o.out.empty()) std::ofstream(o.out, std::ios::binary) << arr.dump(2) << "\n";
            return pass ? 0 : kExitFail;
        }
    } catch (const std::runtime_error& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

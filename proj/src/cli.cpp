#include "qcas/cli.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "qcas/defparse.hpp"
#include "qcas/presets.hpp"
#include "qcas/tableio.hpp"

namespace qcas {

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw validation_error("cannot read file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw validation_error("cannot write file: " + path);
    out << text;
}

IVec parse_ivec(const std::string& s) {
    IVec v;
    std::istringstream is(s);
    std::string cur;
    while (std::getline(is, cur, ',')) {
        try {
            size_t used = 0;
            v.push_back(std::stoll(cur, &used));
            if (used != cur.size()) throw std::invalid_argument("");
        } catch (...) {
            throw usage_error("bad integer vector: " + s);
        }
    }
    if (v.empty()) throw usage_error("empty integer vector");
    return v;
}

Bundle load_bundle(const std::string& path) { return parse_definition(slurp(path)).bundle; }

SolutionTable load_table(const Bundle& b, const std::string& path) {
    TableFile tf = import_table(slurp(path));
    if (!tf.algebra.empty() && tf.algebra != b.alg.name)
        throw validation_error("table belongs to algebra '" + tf.algebra + "', definition is '" +
                               b.alg.name + "'");
    validate_table_entries(b, tf.table);
    return tf.table;
}

// "N(beta;d)=p/q"
std::pair<NVar, Rat> parse_pin(const std::string& s) {
    size_t close = s.find(')');
    if (close == std::string::npos || close + 1 >= s.size() || s[close + 1] != '=')
        throw usage_error("pin must look like N(beta;d)=value: " + s);
    return {nvar_from_string(s.substr(0, close + 1)), rat_from_string(s.substr(close + 2))};
}

std::string format_for(const std::string& path, const std::string& explicit_format) {
    if (!explicit_format.empty()) return explicit_format;
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") return "csv";
    return "json";
}

void print_report(std::ostream& out, const GradedAlgebra& alg, const SolveReport& rep) {
    out << "beta=(";
    for (size_t i = 0; i < rep.beta.size(); ++i) out << (i ? "," : "") << rep.beta[i];
    out << "): relations=" << rep.n_relations << " unknowns=" << rep.n_unknowns
        << " rank=" << rep.rank << " " << rep.status << "\n";
    if (rep.status == "inconsistent") {
        out << "  residual " << rat_to_string(rep.residual) << " from a minimal core of "
            << rep.witness.size() << " rows:\n";
        for (const auto& tag : rep.witness) out << "    " << row_tag_to_string(alg, tag) << "\n";
    } else {
        for (const auto& v : rep.free_vars) out << "  free: " << nvar_to_string(v) << "\n";
    }
}

int cmd_validate(const std::string& file, std::ostream& out) {
    Bundle b = load_bundle(file);
    auto rep = validate_algebra(b.alg);
    if (!rep.ok()) {
        for (const auto& v : rep.items) out << "invalid (" << v.check << "): " << v.detail << "\n";
        return 66;
    }
    validate_cone(b.cone);
    pairing_data(b.alg);
    if (b.K)
        for (const auto& g : cone_generators(b.cone))
            if (b.anticanonical_degree(g) <= 0)
                throw validation_error("-K is not strictly positive on a cone generator");
    out << "ok: algebra " << b.alg.name << ", socle codimension " << b.alg.n << ", "
        << b.alg.divisor_count() << " divisor and " << b.alg.higher_count()
        << " higher basis elements, cone rank " << b.cone.dim << ", K "
        << (b.K ? "present" : "absent") << "\n";
    out << "divisor-generated: " << (is_generated_by_divisors(b.alg) ? "yes" : "no") << "\n";
    return 0;
}

int cmd_solve(const std::string& file, const std::string& bound_s, const std::string& seed_path,
              const std::vector<std::string>& pin_specs, const std::string& policy,
              const std::string& out_path, const std::string& format, std::ostream& out) {
    Bundle b = load_bundle(file);
    auto pd = pairing_data(b.alg);
    Rat bound = rat_from_string(bound_s);

    SolutionTable seeds;
    if (!seed_path.empty()) seeds = load_table(b, seed_path);
    for (const auto& spec : pin_specs) {
        auto [v, val] = parse_pin(spec);
        auto it = seeds.values.find(v);
        if (it != seeds.values.end() && it->second != val)
            throw validation_error("pin conflicts with seed value for " + nvar_to_string(v));
        seeds.values[v] = val;
        seeds.pins.insert(v);
    }
    {
        SolutionTable check;
        check.values = seeds.values;
        validate_table_entries(b, check);
    }

    auto res = reconstruct(b, pd, seeds, bound, policy);
    for (const auto& sv : res.seed_violations)
        out << "seed relation " << relation_id_to_string(b.alg, sv.id) << " evaluates to "
            << rat_to_string(sv.value) << "\n";
    for (const auto& rep : res.reports) print_report(out, b.alg, rep);
    out << "status: " << res.table.status << " (" << res.table.values.size() << " values)\n";

    if (!out_path.empty()) {
        TableFile tf{b.alg.name, res.table};
        spill(out_path, export_table(tf, b.cone, format_for(out_path, format)));
        out << "wrote " << out_path << "\n";
    }
    return res.ok ? 0 : 1;
}

int cmd_verify(const std::string& file, const std::string& table_path, const std::string& bound_s,
               bool zero_default, std::ostream& out) {
    Bundle b = load_bundle(file);
    auto pd = pairing_data(b.alg);
    SolutionTable table = load_table(b, table_path);
    auto vr = verify_table(b, pd, table, rat_from_string(bound_s), zero_default);
    if (vr.ok) {
        out << "OK: all relations hold to bound " << bound_s << "\n";
        return 0;
    }
    out << "FAIL: " << relation_id_to_string(b.alg, vr.id) << " evaluates to "
        << rat_to_string(vr.value) << "\n";
    return 2;
}

int cmd_relations(const std::string& file, const std::string& beta_s, const std::string& degree_s,
                  long long degree_bound, std::ostream& out) {
    Bundle b = load_bundle(file);
    auto pd = pairing_data(b.alg);
    IVec beta = parse_ivec(beta_s);
    std::optional<long long> dbound;
    if (degree_bound >= 0) dbound = degree_bound;
    auto rels = enumerate_relations(b, pd, beta, dbound);
    std::optional<IVec> filter;
    if (!degree_s.empty()) filter = parse_ivec(degree_s);
    size_t shown = 0;
    for (const auto& r : rels) {
        if (filter && r.id.d != *filter) continue;
        out << relation_id_to_string(b.alg, r.id) << ": " << quadpoly_to_string(r.poly) << "\n";
        ++shown;
    }
    out << shown << " relation" << (shown == 1 ? "" : "s") << "\n";
    return 0;
}

int cmd_count(long long rank, std::ostream& out) {
    auto f = count_formulas(rank);
    out << "rank " << rank << "\n";
    out << "relations up to sign (formula): " << f.mod_sign.get_str() << "\n";
    out << "relations modulo two-of-three (formula): " << f.two_of_three.get_str() << "\n";
    if (rank <= 10) {
        auto g = brute_count((int)rank);
        out << "relations up to sign (brute): " << g.mod_sign.get_str() << "\n";
        out << "relations modulo two-of-three (brute): " << g.two_of_three.get_str() << "\n";
        if (!(f == g)) {
            out << "MISMATCH between formula and brute enumeration\n";
            return 2;
        }
    } else {
        out << "brute enumeration skipped (rank over 10)\n";
    }
    return 0;
}

int cmd_identities(const std::string& file, long long samples, long long rng_seed,
                   const std::string& bound_s, std::ostream& out) {
    Bundle b = load_bundle(file);
    auto pd = pairing_data(b.alg);
    if (b.alg.size() < 3 || b.alg.higher_count() < 1)
        throw usage_error("identities need at least one divisor and one higher element");
    auto pool = curve_classes_up_to(b.cone, rat_from_string(bound_s));
    if (pool.empty()) throw usage_error("no curve classes within the bound");

    std::mt19937_64 rng(rng_seed);
    auto idx = [&]() { return 1 + (int)(rng() % (b.alg.size() - 1)); };
    auto higher = [&]() {
        int m = idx();
        while (!b.alg.is_higher(m)) m = idx();
        return m;
    };
    int s = b.alg.higher_count();
    // small total degree keeps the split enumeration cheap on large bases
    auto rand_d = [&]() {
        IVec d(s, 0);
        long long bumps = (long long)(rng() % 5);
        for (long long t = 0; t < bumps; ++t) ++d[rng() % s];
        return d;
    };

    long long ok2 = 0, ok3 = 0, okm = 0, ok5 = 0;
    for (long long t = 0; t < samples; ++t) {
        IVec beta = pool[rng() % pool.size()];
        int i = idx(), j = idx(), k = idx(), l = idx(), m = higher();
        IVec d = rand_d();
        if (check_two_out_of_three(b, pd, i, j, k, l, beta, d)) ++ok2;
        IVec d3 = d;
        d3[b.alg.higher_slot(m)] = std::max<long long>(d3[b.alg.higher_slot(m)], 1);
        if (check_three_symbols(b, pd, i, j, k, l, m, beta, d3)) ++ok3;
        if (check_m_diagonal(b, pd, i, j, k, l, m, beta, d)) ++okm;
        try {
            five_symbols_combination(b, pd, i, j, k, l, m, beta, d);
            ++ok5;
        } catch (const QcasError&) {
        }
    }
    out << "two-of-three: " << ok2 << "/" << samples << "\n";
    out << "three-symbols: " << ok3 << "/" << samples << "\n";
    out << "m-diagonal: " << okm << "/" << samples << "\n";
    out << "five-symbols linear cancellation: " << ok5 << "/" << samples << "\n";
    bool all = ok2 == samples && ok3 == samples && okm == samples && ok5 == samples;
    return all ? 0 : 2;
}

int cmd_preset(const std::string& name, const std::vector<std::string>& param_specs, bool list,
               std::ostream& out) {
    if (list) {
        for (const auto& info : preset_catalog()) {
            out << info.name << ": " << info.summary;
            if (!info.params.empty()) {
                out << " (params:";
                for (const auto& p : info.params) out << " " << p;
                out << ")";
            }
            out << "\n";
        }
        return 0;
    }
    if (name.empty()) throw usage_error("preset needs a name (or --list)");
    std::map<std::string, long long> params;
    for (const auto& spec : param_specs) {
        size_t eq = spec.find('=');
        if (eq == std::string::npos) throw usage_error("param must look like key=value: " + spec);
        try {
            size_t used = 0;
            long long v = std::stoll(spec.substr(eq + 1), &used);
            if (used != spec.size() - eq - 1) throw std::invalid_argument("");
            params[spec.substr(0, eq)] = v;
        } catch (const std::invalid_argument&) {
            throw usage_error("param value must be an integer: " + spec);
        }
    }
    out << print_definition(get_preset(name, params), preset_doc(name));
    return 0;
}

int cmd_export(const std::string& file, const std::string& table_path, const std::string& format,
               std::ostream& out) {
    Bundle b = load_bundle(file);
    SolutionTable table = load_table(b, table_path);
    out << export_table(TableFile{b.alg.name, table}, b.cone, format);
    return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact workbench for associativity relations and curve counts"};
    app.require_subcommand(1);

    std::string file, bound = "0", seed_path, policy = "strict", out_path, format;
    std::string table_path, beta_s, degree_s, preset_name;
    std::vector<std::string> pins, params;
    bool zero_default = false, list_presets = false;
    long long rank = 0, samples = 100, rng_seed = 0, degree_bound = -1;

    auto* validate = app.add_subcommand("validate", "check a definition file");
    validate->add_option("file", file)->required();

    auto* solve = app.add_subcommand("solve", "reconstruct a table stage by stage");
    solve->add_option("file", file)->required();
    solve->add_option("--bound", bound, "omega bound on curve classes")->required();
    solve->add_option("--seed", seed_path, "starting table (json or csv)");
    solve->add_option("--pin", pins, "extra pinned value N(beta;d)=p/q");
    solve->add_option("--policy", policy)->check(CLI::IsMember({"strict", "pins", "zero"}));
    solve->add_option("--out", out_path, "table file to write");
    solve->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

    auto* verify = app.add_subcommand("verify", "evaluate every relation on a table");
    verify->add_option("file", file)->required();
    verify->add_option("--table", table_path)->required();
    verify->add_option("--bound", bound)->required();
    verify->add_flag("--zero-default", zero_default, "treat absent variables as zero");

    auto* relations = app.add_subcommand("relations", "print the relations of one curve class");
    relations->add_option("file", file)->required();
    relations->add_option("--beta", beta_s)->required();
    relations->add_option("--degree", degree_s, "only this insertion degree vector");
    relations->add_option("--degree-bound", degree_bound,
                          "insertion bound when the definition has no canonical class");

    auto* count = app.add_subcommand("count", "closed-form and brute relation counts");
    count->add_option("--rank", rank)->required();

    auto* identities = app.add_subcommand("identities", "randomized exact identity suite");
    identities->add_option("file", file)->required();
    identities->add_option("--samples", samples)->required();
    identities->add_option("--seed-rng", rng_seed);
    identities->add_option("--bound", bound)->default_val("3");

    auto* preset = app.add_subcommand("preset", "emit a shipped definition");
    preset->add_option("name", preset_name);
    preset->add_option("--param", params, "key=value");
    preset->add_flag("--list", list_presets);

    auto* exportc = app.add_subcommand("export", "re-emit a table in json or csv");
    exportc->add_option("file", file)->required();
    exportc->add_option("--table", table_path)->required();
    exportc->add_option("--format", format)->required()->check(CLI::IsMember({"json", "csv"}));

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error (usage): " << e.what() << "\n";
        return 64;
    }

    try {
        if (validate->parsed()) return cmd_validate(file, out);
        if (solve->parsed())
            return cmd_solve(file, bound, seed_path, pins, policy, out_path, format, out);
        if (verify->parsed()) return cmd_verify(file, table_path, bound, zero_default, out);
        if (relations->parsed()) return cmd_relations(file, beta_s, degree_s, degree_bound, out);
        if (count->parsed()) return cmd_count(rank, out);
        if (identities->parsed()) return cmd_identities(file, samples, rng_seed, bound, out);
        if (preset->parsed()) return cmd_preset(preset_name, params, list_presets, out);
        if (exportc->parsed()) return cmd_export(file, table_path, format, out);
        err << "error (usage): no subcommand\n";
        return 64;
    } catch (const QcasError& e) {
        err << "error (" << e.category << "): " << e.what() << "\n";
        if (e.category == "usage") return 64;
        if (e.category == "parse") return 65;
        if (e.category == "validation") return 66;
        if (e.category == "precondition") return 2;
        return 70;
    }
}

}  // namespace qcas

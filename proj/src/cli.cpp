#include "tricert/cli.hpp"

#include <iomanip>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tricert/io.hpp"
#include "tricert/lemmas.hpp"

namespace tricert {

namespace {

Mutation parse_mutation(const std::string& text) {
    // flip:IDX | sliver:IDX:SEVERITY | rogue:IDX   (IDX = -1 draws from seed)
    Mutation m;
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    if (parts.empty()) throw BadRecipe("empty mutation");
    auto target = [&](size_t i) {
        if (parts.size() <= i) return std::int64_t(-1);
        try {
            return std::int64_t(std::stoll(parts[i]));
        } catch (...) {
            throw BadRecipe("mutation: bad index '" + parts[i] + "'");
        }
    };
    if (parts[0] == "flip") {
        m.kind = Mutation::Kind::FlipOrientation;
        m.target = target(1);
    } else if (parts[0] == "sliver") {
        m.kind = Mutation::Kind::Sliver;
        m.target = target(1);
        if (parts.size() > 2) {
            try {
                m.severity = std::stod(parts[2]);
            } catch (...) {
                throw BadRecipe("mutation: bad severity");
            }
        }
    } else if (parts[0] == "rogue") {
        m.kind = Mutation::Kind::RogueVertex;
        m.target = target(1);
    } else {
        throw BadRecipe("unknown mutation '" + parts[0] + "' (flip, sliver, rogue)");
    }
    return m;
}

int cmd_gen(const std::string& manifold_spec, const std::string& recipe_text,
            const std::string& out_path, const std::vector<std::string>& mutations, uint64_t seed,
            std::ostream& out) {
    auto M = TestManifold::parse(manifold_spec);
    MeshRecipe recipe = MeshRecipe::parse(recipe_text);
    int i = 0;
    for (const auto& mtext : mutations) {
        Mutation m = parse_mutation(mtext);
        m.seed = seed + uint64_t(++i);
        recipe.mutations.push_back(m);
    }
    GeometricComplex c = generate(recipe, *M);
    save_complex(c, out_path);

    RrchChoice policy{RrchPolicy::LocalLfs, 9.0 / 137.0};
    auto k = mesh_constants(c, *M, policy, false);
    nlohmann::json j;
    j["manifold"] = M->spec_string();
    j["recipe"] = recipe.to_string();
    j["vertices"] = c.n_vertices();
    j["simplices"] = c.n_top();
    j["L_min"] = k.L_min;
    j["L_max"] = k.L_max;
    j["t_min"] = k.t_min;
    j["eps0"] = k.eps0;
    j["mu0"] = k.mu0;
    out << j.dump() << "\n";
    return 0;
}

int cmd_certify(const std::string& complex_path, const std::string& manifold_spec,
                const std::string& mode_text, const std::string& report_path,
                const std::string& csv_path, bool global_constants, bool sharp_bound,
                int jacobian_grid, std::ostream& out) {
    auto M = TestManifold::parse(manifold_spec);
    GeometricComplex c = load_complex(complex_path);

    CertifierConfig config;
    config.local_constants = !global_constants;
    config.use_dimension_sharp_bound = sharp_bound;

    CertificationReport report;
    if (mode_text == "lfs") {
        report = certify_submanifold(*M, c, CertMode::SubmanifoldLfs, config);
    } else if (mode_text == "reach") {
        report = certify_submanifold(*M, c, CertMode::SubmanifoldReach, config);
    } else if (mode_text == "diff") {
        report = certify_differential_control(*M, c, jacobian_grid, config);
    } else if (mode_text == "generic") {
        RrchChoice policy{RrchPolicy::GlobalReach, 9.0 / 137.0};
        std::vector<Chart> charts;
        std::vector<ChartDistortion> distortions;
        QualityBounds quality{1e300, 0, 1};
        for (VertexId p = 0; p < c.n_vertices(); ++p) {
            charts.push_back(build_chart(*M, c, p, policy));
            const Chart& chart = charts.back();
            quality.s0 = std::min(quality.s0, chart.s0_hat);
            quality.L0 = std::max(quality.L0, chart.L0_hat);
            quality.t0 = std::min(quality.t0, chart.t0_hat);
        }
        for (const Chart& chart : charts)
            distortions.push_back(certified_chart_distortion(
                chart, *M, QualityBounds{chart.s0_star, chart.L0_star, chart.t0_star}, policy));
        report = certify_generic(c, charts, distortions, quality, config);
    } else {
        throw BadRecipe("unknown mode '" + mode_text + "' (lfs, reach, generic, diff)");
    }

    save_report(report, report_path, csv_path);
    out << report_to_json(report) << "\n";
    switch (report.verdict) {
        case Verdict::Certified: return 0;
        case Verdict::Refuted: return 1;
        case Verdict::Inconclusive: return 4;
    }
    return 4;
}

int cmd_lemma_check(const std::string& lemma, uint64_t seed, std::int64_t cases,
                    const std::vector<std::string>& manifolds, std::ostream& out,
                    std::ostream& err) {
    LemmaOptions opts;
    opts.seed = seed;
    opts.cases = cases;
    if (!manifolds.empty()) opts.manifold_specs = manifolds;

    std::vector<LemmaResult> results;
    if (lemma == "all") {
        results = run_all_lemmas(opts);
    } else {
        bool known = false;
        for (const auto& n : lemma_names()) known = known || n == lemma;
        if (!known) {
            err << "unknown lemma '" << lemma << "'; available:\n";
            for (const auto& n : lemma_names()) err << "  " << n << "\n";
            return 2;
        }
        results.push_back(run_lemma(lemma, opts));
    }
    bool all_pass = true;
    out << std::left << std::setw(34) << "lemma" << std::right << std::setw(10) << "cases"
        << std::setw(8) << "viol" << std::setw(15) << "worst-margin" << std::setw(9) << "secs"
        << "  result\n";
    for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        out << std::left << std::setw(34) << r.name << std::right << std::setw(10) << r.cases
            << std::setw(8) << r.violations << std::setw(15) << std::setprecision(3)
            << std::scientific << r.worst_margin << std::defaultfloat << std::setw(9)
            << std::fixed << std::setprecision(2) << r.seconds << std::defaultfloat
            << (r.pass ? "  pass" : "  FAIL") << "\n";
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"triangulation certification toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a test complex on a manifold");
    std::string g_manifold = "sphere:2,3,1.0", g_recipe, g_out;
    std::vector<std::string> g_mutations;
    uint64_t g_seed = 1;
    gen->add_option("--manifold", g_manifold, "manifold spec (sphere:m,N,r | torus:R,r | circle:r | bisphere:r,gap)");
    gen->add_option("--recipe", g_recipe, "mesh recipe (icosphere:k | torusgrid:NUxNV | polycircle:n)")->required();
    gen->add_option("-o,--output", g_out, "output complex JSON path")->required();
    gen->add_option("--mutate", g_mutations, "mutations: flip:IDX | sliver:IDX:SEV | rogue:IDX");
    gen->add_option("--seed", g_seed, "mutation seed");

    // certify
    auto* cert = app.add_subcommand("certify", "run the certification criteria on a complex");
    std::string c_complex, c_manifold, c_mode = "reach", c_report, c_csv;
    bool c_global = false, c_sharp = false;
    int c_grid = 3;
    cert->add_option("--complex", c_complex, "complex JSON path")->required();
    cert->add_option("--manifold", c_manifold, "manifold spec")->required();
    cert->add_option("--mode", c_mode, "lfs | reach | generic | diff");
    cert->add_option("--report", c_report, "report JSON output path");
    cert->add_option("--csv", c_csv, "criterion margins CSV output path");
    cert->add_flag("--global-constants", c_global, "use global instead of per-star constants");
    cert->add_flag("--dimension-sharp", c_sharp, "verdict uses the dimension-sharp constant");
    cert->add_option("--jacobian-grid", c_grid, "grid resolution for diff mode");

    // lemma-check
    auto* lem = app.add_subcommand("lemma-check", "randomized verification sweeps of the bounds");
    std::string l_name = "all";
    uint64_t l_seed = 7;
    std::int64_t l_cases = 10000;
    std::vector<std::string> l_manifolds;
    lem->add_option("--lemma", l_name, "lemma name or 'all'");
    lem->add_option("--seed", l_seed, "sweep seed");
    lem->add_option("-n,--cases", l_cases, "randomized cases per lemma");
    lem->add_option("--manifold", l_manifolds, "manifold specs for manifold-based sweeps");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (gen->parsed()) return cmd_gen(g_manifold, g_recipe, g_out, g_mutations, g_seed, out);
        if (cert->parsed())
            return cmd_certify(c_complex, c_manifold, c_mode, c_report, c_csv, c_global, c_sharp,
                               c_grid, out);
        if (lem->parsed()) return cmd_lemma_check(l_name, l_seed, l_cases, l_manifolds, out, err);
    } catch (const InputNotManifold& e) {
        err << "input is not a manifold complex: " << e.what() << "\n";
        return 5;
    } catch (const FormatError& e) {
        err << "format error: " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << "\n";
        return 3;
    } catch (const BadRecipe& e) {
        err << "bad arguments: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.push_back(argv[i]);
    return run_cli(args, std::cout, std::cerr);
}

}  // namespace tricert

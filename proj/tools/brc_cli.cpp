#include <cstdio>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "brc/bounds.hpp"
#include "brc/channel.hpp"
#include "brc/gaussian.hpp"
#include "brc/infocalc.hpp"
#include "brc/io.hpp"
#include "brc/region.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 0xB12C;

struct ComputeOpts {
    std::string theorem;
    std::string channel_path;
    std::string aux_path;
    std::string out_path;
    std::string svg_path;
    std::string json_path;
    std::uint64_t seed = kDefaultSeed;
    bool seed_set = false;
};

int run_compute_region(const ComputeOpts& o) {
    brc::AuxSpec spec;
    if (!o.aux_path.empty()) spec = brc::io::load_aux_spec_json(o.aux_path);
    if (o.seed_set) spec.seed = o.seed;

    auto any = brc::io::load_channel_json(o.channel_path);
    auto need = [&](const char* kind) -> int {
        std::fprintf(stderr, "error: --theorem %s needs a %s channel file\n", o.theorem.c_str(),
                     kind);
        return 1;
    };

    brc::RegionEvalReport rep;
    if (o.theorem == "1") {
        auto* ch = std::get_if<brc::BrcChannel>(&any);
        if (!ch) return need("3-input (X, X1, X2)");
        rep = brc::eval_theorem1(*ch, spec);
    } else if (o.theorem == "marton") {
        auto* ch = std::get_if<brc::BroadcastChannel>(&any);
        if (!ch) return need("1-input (X)");
        rep = brc::eval_marton(*ch, spec);
    } else {
        auto* ch = std::get_if<brc::BrcCrChannel>(&any);
        if (!ch) return need("2-input (X, X1)");
        if (o.theorem == "cor2")
            rep = brc::eval_corollary2(*ch, spec);
        else if (o.theorem == "3")
            rep = brc::eval_theorem3_upper(*ch, spec);
        else if (o.theorem == "conj1")
            rep = brc::eval_conjecture1(*ch, spec);
        else if (o.theorem == "4")
            rep = brc::eval_theorem4(*ch, spec);
        else {
            std::fprintf(stderr, "error: unknown theorem '%s'\n", o.theorem.c_str());
            return 1;
        }
    }
    for (const auto& w : rep.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
    brc::io::save_region_csv(rep.region, o.out_path);
    if (!o.svg_path.empty()) brc::io::save_region_svg(rep.region, o.svg_path);
    if (!o.json_path.empty())
        brc::io::write_text_file(o.json_path, brc::io::region_to_json(rep.region));
    std::printf("region: %zu vertices, %zu facets, dim %d -> %s\n", rep.region.vertices.size(),
                rep.region.halfspaces.size(), rep.region.dim, o.out_path.c_str());
    return 0;
}

int run_check_degraded(const std::string& path, double tol) {
    auto any = brc::io::load_channel_json(path);
    auto* ch = std::get_if<brc::BrcCrChannel>(&any);
    if (!ch) {
        std::fprintf(stderr, "error: check-degraded needs a 2-input (X, X1) channel file\n");
        return 1;
    }
    auto cls = brc::classify_brc_cr(*ch, {}, tol);
    std::printf("%s\n", brc::deg_kind_name(cls.kind).c_str());
    for (const auto& v : cls.condition_degraded)
        std::printf("  degraded condition %s: violation %.3e\n", v.chain.c_str(), v.violation);
    for (const auto& v : cls.condition_semi)
        std::printf("  semi-degraded condition %s: violation %.3e\n", v.chain.c_str(),
                    v.violation);
    return 0;
}

int run_derive_fm(const std::string& dump_dir, const std::string& equalities_path, int samples,
                  std::uint64_t seed) {
    brc::info::DeriveOptions opts;
    opts.numeric_samples = samples;
    opts.seed = seed;
    if (!equalities_path.empty()) opts.equalities = brc::info::load_equalities(equalities_path);
    std::vector<std::string> steps;
    if (!dump_dir.empty()) opts.dump_steps = &steps;
    auto rep = brc::info::derive_and_compare(opts);
    if (!dump_dir.empty()) {
        std::filesystem::create_directories(dump_dir);
        for (std::size_t i = 0; i < steps.size(); ++i) {
            char name[32];
            std::snprintf(name, sizeof name, "step-%02zu.txt", i);
            brc::io::write_text_file((std::filesystem::path(dump_dir) / name).string(), steps[i]);
        }
    }
    std::fputs(rep.summary().c_str(), stdout);
    return rep.pass ? 0 : 2;
}

struct GaussOpts {
    double P = 1, P1 = 1, N1 = 1, N2 = 1, Nr = 1;
    int grid = 101;
    std::string out_path;
    std::string svg_path;
};

int run_gaussian_sweep(const GaussOpts& o) {
    brc::GaussianBrcParams params{o.P, o.P1, o.N1, o.N2, o.Nr};
    auto rep = brc::gaussian_region(params, brc::SweepSpec::uniform(o.grid));
    brc::io::save_region_csv(rep.region, o.out_path);
    if (!o.svg_path.empty()) brc::io::save_region_svg(rep.region, o.svg_path);
    std::printf("region: %zu vertices, sum-rate support %.6f bits -> %s\n",
                rep.region.vertices.size(), brc::region_support(rep.region, {1, 1, 0}),
                o.out_path.c_str());
    return 0;
}

int run_compare_regions(const std::string& a_path, const std::string& b_path,
                        const std::string& expect, double tol) {
    brc::RateRegion a = brc::io::load_region_csv(a_path);
    brc::RateRegion b = brc::io::load_region_csv(b_path);
    if (a.dim != b.dim) {
        std::fprintf(stderr, "error: dimension mismatch (%d vs %d)\n", a.dim, b.dim);
        return 1;
    }
    auto ab = brc::region_includes(a, b, tol);
    if (expect == "includes") {
        if (ab.included) {
            std::printf("OK: %s includes %s (worst violation %.3e)\n", a_path.c_str(),
                        b_path.c_str(), ab.worst_margin);
            return 0;
        }
        std::printf("FAIL: %s does not include %s; vertex (%.6f, %.6f, %.6f) violates by %.3e\n",
                    a_path.c_str(), b_path.c_str(), ab.worst_point[0], ab.worst_point[1],
                    ab.worst_point[2], ab.worst_margin);
        return 2;
    }
    auto ba = brc::region_includes(b, a, tol);
    if (ab.included && ba.included) {
        std::printf("OK: regions are equal within %.1e\n", tol);
        return 0;
    }
    std::printf("FAIL: regions differ (violations %.3e / %.3e)\n", ab.worst_margin,
                ba.worst_margin);
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Broadcast relay channel rate-region toolkit"};
    app.require_subcommand(1);

    ComputeOpts co;
    auto* compute = app.add_subcommand("compute-region", "Evaluate a rate-region formula");
    compute->add_option("--theorem", co.theorem, "Region formula: 1, cor2, 3, conj1, 4, marton")
        ->required()
        ->check(CLI::IsMember({"1", "cor2", "3", "conj1", "4", "marton"}));
    compute->add_option("--channel", co.channel_path, "Channel JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    compute->add_option("--aux", co.aux_path, "Aux-spec JSON file")->check(CLI::ExistingFile);
    compute->add_option("--out", co.out_path, "Output region CSV")->required();
    compute->add_option("--svg", co.svg_path, "Optional SVG plot");
    compute->add_option("--json", co.json_path, "Optional region JSON with halfspaces");
    compute->add_option("--seed", co.seed, "Sampling seed (overrides aux spec)")
        ->each([&](const std::string&) { co.seed_set = true; });

    std::string cd_path;
    double cd_tol = 1e-9;
    auto* checkdeg = app.add_subcommand("check-degraded", "Classify a common-relay channel");
    checkdeg->add_option("channel", cd_path, "Channel JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    checkdeg->add_option("--tol", cd_tol, "Markov violation tolerance");

    std::string fm_dump, fm_eq;
    int fm_samples = 24;
    std::uint64_t fm_seed = kDefaultSeed;
    auto* derive = app.add_subcommand(
        "derive-fm", "Re-derive the inner-bound inequalities by exact elimination");
    derive->add_option("--dump-steps", fm_dump, "Directory for per-step row tables");
    derive->add_option("--equalities", fm_eq, "Equality list JSON (default: built in)")
        ->check(CLI::ExistingFile);
    derive->add_option("--samples", fm_samples, "Numeric redundancy-check sample count");
    derive->add_option("--seed", fm_seed, "Numeric redundancy-check seed");

    GaussOpts go;
    auto* gauss = app.add_subcommand("gaussian-sweep", "Sweep the Gaussian capacity region");
    gauss->add_option("--P", go.P, "Source power");
    gauss->add_option("--P1", go.P1, "Relay power");
    gauss->add_option("--N1", go.N1, "First destination noise variance");
    gauss->add_option("--N2", go.N2, "Second destination noise variance");
    gauss->add_option("--Nr", go.Nr, "Relay observation noise variance");
    gauss->add_option("--grid", go.grid, "Grid points per parameter axis")
        ->check(CLI::Range(2, 2001));
    gauss->add_option("--out", go.out_path, "Output region CSV")->required();
    gauss->add_option("--svg", go.svg_path, "Optional SVG plot");

    std::string cr_a, cr_b, cr_expect = "includes";
    double cr_tol = 1e-9;
    auto* compare = app.add_subcommand("compare-regions", "Compare two region CSV files");
    compare->add_option("a", cr_a, "Outer region CSV")->required()->check(CLI::ExistingFile);
    compare->add_option("b", cr_b, "Inner region CSV")->required()->check(CLI::ExistingFile);
    compare->add_option("--expect", cr_expect, "Relation to verify: includes or equals")
        ->check(CLI::IsMember({"includes", "equals"}));
    compare->add_option("--tol", cr_tol, "Vertex containment tolerance");

    CLI11_PARSE(app, argc, argv);

    try {
        if (compute->parsed()) return run_compute_region(co);
        if (checkdeg->parsed()) return run_check_degraded(cd_path, cd_tol);
        if (derive->parsed()) return run_derive_fm(fm_dump, fm_eq, fm_samples, fm_seed);
        if (gauss->parsed()) return run_gaussian_sweep(go);
        if (compare->parsed()) return run_compare_regions(cr_a, cr_b, cr_expect, cr_tol);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}

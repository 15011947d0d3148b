// Acceptance runner: one PASS/FAIL line per criterion. Each criterion is a set
// of registry checks run on concrete models with explicit sample counts and
// thresholds. `--only N` restricts the run to criterion N.

#include "ptolemy/report.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace ptolemy;

namespace {

struct Item {
    std::string model;
    int dim;
    std::string check;
    long samples;  // 0: the check's default
    double threshold;
};

struct Criterion {
    int number;
    std::string title;
    std::vector<Item> items;
};

const CheckDef& find_check(const std::string& id) {
    for (const auto& d : check_registry())
        if (d.id == id) return d;
    throw std::runtime_error("unknown check " + id);
}

std::vector<Criterion> criteria() {
    const std::vector<std::pair<std::string, int>> all_models{
        {"euclidean", 2}, {"euclidean", 3}, {"heisenberg", 1}, {"heisenberg", 2}};
    const std::vector<std::pair<std::string, int>> planar{{"euclidean", 2}, {"heisenberg", 1}};
    auto over = [](const std::vector<std::pair<std::string, int>>& ms, const std::string& id,
                   long n, double thr) {
        std::vector<Item> v;
        for (const auto& [m, d] : ms) v.push_back({m, d, id, n, thr});
        return v;
    };
    auto join = [](std::vector<std::vector<Item>> parts) {
        std::vector<Item> v;
        for (auto& p : parts) v.insert(v.end(), p.begin(), p.end());
        return v;
    };

    std::vector<Criterion> c;
    c.push_back({1, "Ptolemy inequality on 1e5 random quadruples",
                 over(all_models, "ptolemy.triangle", 100000, 1e-9)});
    c.push_back({2, "cross-ratio invariance under s-inversions, homotheties, shifts",
                 join({over(all_models, "inversions.crt_s_inversion", 10000, 1e-9),
                       over(all_models, "inversions.crt_homothety", 10000, 1e-9),
                       over(all_models, "inversions.crt_shift", 10000, 1e-9)})});
    c.push_back({3, "Ptolemy equality on certified circles and their images",
                 over(all_models, "ptolemy.circle_equality", 0, 1e-9)});
    c.push_back({4, "duality of Busemann functions and one-sided derivatives",
                 join({over(planar, "duality.derivatives", 1000, 1e-5),
                       over(planar, "duality.busemann_formula", 1000, 1e-6)})});
    c.push_back({5, "flatness b+ + b- = const", over(planar, "duality.flatness", 0, 1e-6)});
    c.push_back({6, "slope laws",
                 join({over(planar, "slope.symmetry", 0, 1e-6), over(planar, "slope.self", 0, 1e-8),
                       {{"heisenberg", 1, "slope.closed_form", 0, 1e-6},
                        {"heisenberg", 2, "slope.closed_form", 0, 1e-6}},
                       over(planar, "slope.first_variation", 0, 1e-5)})});
    c.push_back({7, "fibration: 1-Lipschitz, isometric on lines, property K",
                 join({over(planar, "fibration.lipschitz", 10000, 1e-12),
                       over(planar, "fibration.line_isometry", 0, 1e-12),
                       over(planar, "fibration.k_line", 0, 1e-9)})});
    c.push_back({8, "zigzag of an orthogonal pair and the degenerate pair",
                 {{"heisenberg", 1, "zigzag.speed", 0, 1e-4},
                  {"heisenberg", 1, "zigzag.limit_slopes", 0, 1e-4},
                  {"heisenberg", 1, "zigzag.drift", 0, std::log(1.2)},
                  {"heisenberg", 1, "zigzag.degenerate", 0, 0.5}}});
    c.push_back({9, "orthogonalization with full and partial frames",
                 join({over({{"heisenberg", 1}, {"heisenberg", 2}, {"euclidean", 3}},
                            "zigzag.orthogonalize_full", 100, 1e-6),
                       over({{"heisenberg", 2}, {"euclidean", 3}}, "zigzag.orthogonalize_partial", 0,
                            1e-6)})});
    c.push_back({10, "filling of the extended Euclidean space against the half-space metric",
                 join({over({{"euclidean", 1}, {"euclidean", 2}, {"euclidean", 3}}, "filling.rho_oracle",
                            10000, 1e-6),
                       over({{"euclidean", 2}}, "filling.line_geodesy", 0, 1e-9),
                       over({{"euclidean", 2}}, "filling.triangle", 10000, 1e-9)})});
    c.push_back({11, "Heisenberg filling: two rho paths and hyperbolic planes",
                 join({over({{"heisenberg", 1}, {"heisenberg", 2}}, "filling.two_path", 0, 1e-8),
                       over({{"heisenberg", 1}, {"heisenberg", 2}}, "filling.hyp2", 0, 1e-6)})});
    c.push_back({12, "asymptotics: E(r) and Gromov-product error decay with log-log slope 1 +- 0.1",
                 join({over({{"euclidean", 1}, {"heisenberg", 1}}, "asymptotics.e_slope", 0, 0.1),
                       over({{"euclidean", 1}, {"heisenberg", 1}}, "asymptotics.gromov_slope", 0, 0.1)})});
    c.push_back({13, "second order: arclength defect shrinks, excess inequality holds",
                 join({over(planar, "slope.arclength", 0, 0.999),
                       over(planar, "slope.excess", 0, 1e-8)})});
    c.push_back({14, "endpoint estimates: product identity and strict bound",
                 join({over({{"euclidean", 1}, {"euclidean", 2}, {"heisenberg", 1}},
                            "filling.endpoint_product", 0, 1e-9),
                       over({{"euclidean", 1}, {"euclidean", 2}, {"heisenberg", 1}},
                            "filling.endpoint_bound", 0, 1.0 - 1e-12)})});
    return c;
}

bool run(const Criterion& c, std::uint64_t seed) {
    bool ok = true;
    for (const auto& it : c.items) {
        const CheckDef& def = find_check(it.check);
        SuiteConfig cfg;
        cfg.model = it.model;
        cfg.dim = it.dim;
        cfg.seed = seed;
        if (it.samples > 0) cfg.samples = it.samples;
        ModelPtr model = make_model(it.model, it.dim);
        CheckRecord r = run_check(def, cfg, model);
        bool pass = r.samples > 0 && r.max_residual <= it.threshold;
        ok = ok && pass;
        std::printf("    %-4s %-30s %-10s dim=%d samples=%-6ld max=%-12.4g threshold=%.3g%s%s\n",
                    pass ? "ok" : "bad", it.check.c_str(), it.model.c_str(), it.dim, r.samples,
                    r.max_residual, it.threshold, r.note.empty() ? "" : "  ", r.note.c_str());
    }
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", c.number, c.title.c_str());
    std::fflush(stdout);
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    int only = 0;
    std::uint64_t seed = 20240611;
    app.add_option("--only", only, "run a single criterion")->check(CLI::Range(1, 14));
    app.add_option("--seed", seed, "master seed");
    CLI11_PARSE(app, argc, argv);

    bool all = true;
    for (const auto& c : criteria())
        if (only == 0 || c.number == only) all = run(c, seed) && all;
    return all ? 0 : 1;
}

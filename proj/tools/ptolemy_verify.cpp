#include "ptolemy/errors.hpp"
#include "ptolemy/filling.hpp"
#include "ptolemy/report.hpp"
#include "ptolemy/zigzag.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace ptolemy;
using ojson = nlohmann::ordered_json;

namespace {

std::vector<double> parse_list(const std::string& s, const std::string& what) {
    std::vector<double> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ConfigError(what + ": cannot parse '" + tok + "' as a number");
        }
    }
    return v;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IOError("cannot read '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::uint64_t parse_seed(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        unsigned long long v = std::stoull(s, &used, 0);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(what + ": cannot parse '" + s + "' as an unsigned integer");
    }
}

Vec to_vec(const std::vector<double>& v) { return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size())); }

ModelPtr checked_model(const std::string& name, int dim) {
    if (name != "euclidean" && name != "heisenberg")
        throw ConfigError("model: expected 'euclidean' or 'heisenberg', got '" + name + "'");
    if (dim < 1) throw ConfigError("dim: must be >= 1");
    return make_model(name, dim);
}

ojson vec_json(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical verification of Ptolemy and Moebius structures"};
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "run verification suites and emit a report");
    std::string config_path, model = "heisenberg", out, format;
    int dim = 0, threads = 0;
    long samples = 0;
    double tol = 0;
    std::string seed_str;
    std::vector<std::string> suites;
    bool timing = false;
    verify->add_option("--config", config_path, "JSON config mirroring the suite fields");
    auto* o_model = verify->add_option("--model", model, "euclidean or heisenberg");
    auto* o_dim = verify->add_option("--dim", dim, "model dimension n (euclidean) or m (heisenberg)");
    auto* o_suite = verify->add_option("--suite", suites, "suite name; repeat or comma-separate")
                        ->delimiter(',');
    auto* o_samples = verify->add_option("--samples", samples, "samples per scalable check");
    auto* o_tol = verify->add_option("--tol", tol, "tolerance override for every check");
    auto* o_seed = verify->add_option("--seed", seed_str, "master seed");
    auto* o_out = verify->add_option("--out", out, "report path (default stdout)");
    auto* o_format = verify->add_option("--format", format, "json or csv");
    auto* o_threads = verify->add_option("--threads", threads, "worker threads");
    auto* o_timing = verify->add_flag("--timing", timing, "record wall time per check");

    // zigzag
    auto* zig = app.add_subcommand("zigzag", "zigzag limit of a list of line directions");
    std::string zmodel = "heisenberg";
    int zdim = 1, depth = 14;
    std::vector<std::string> dirs;
    std::string weights;
    zig->add_option("--model", zmodel, "euclidean or heisenberg");
    zig->add_option("--dim", zdim, "model dimension");
    zig->add_option("--dir", dirs, "horizontal direction as comma list; repeat per line")->required();
    zig->add_option("--weights", weights, "comma list of positive weights")->required();
    zig->add_option("--depth", depth, "maximal dyadic depth");

    // filling
    auto* fil = app.add_subcommand("filling", "distance between two points of the filling");
    std::string fmodel = "heisenberg", base_s, base_t;
    int fdim = 1;
    double height_s = 1, height_t = 1;
    fil->add_option("--model", fmodel, "euclidean or heisenberg");
    fil->add_option("--dim", fdim, "model dimension");
    fil->add_option("--base-s", base_s, "base point of s as comma list")->required();
    fil->add_option("--height-s", height_s, "height of s")->required();
    fil->add_option("--base-t", base_t, "base point of t as comma list")->required();
    fil->add_option("--height-t", height_t, "height of t")->required();

    // report
    auto* rep_cmd = app.add_subcommand("report", "summarize a JSON report");
    std::string in_path;
    rep_cmd->add_option("--in", in_path, "report file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*verify) {
            SuiteConfig cfg;
            if (!config_path.empty()) cfg = config_from_json(read_file(config_path));
            if (const char* env = std::getenv("PTOLEMY_SEED")) cfg.seed = parse_seed(env, "PTOLEMY_SEED");
            if (*o_model) cfg.model = model;
            if (*o_dim) cfg.dim = dim;
            if (*o_suite) cfg.suites = suites;
            if (*o_samples) cfg.samples = samples;
            if (*o_tol) cfg.tol = tol;
            if (*o_seed) cfg.seed = parse_seed(seed_str, "seed");
            if (*o_out) cfg.out = out;
            if (*o_format) cfg.format = format;
            if (*o_threads) cfg.threads = threads;
            if (*o_timing) cfg.timing = timing;
            Report r = run_suite(cfg);
            if (cfg.out.empty()) std::cout << emit_report(r, cfg.format);
            else write_report(r, cfg.out, cfg.format);
            for (const auto& c : r.checks)
                if (!c.pass) std::cerr << "FAIL " << c.id << " max_residual=" << c.max_residual << " tol=" << c.tol << "\n";
            return r.all_pass() ? 0 : 1;
        }
        if (*zig) {
            ModelPtr M = checked_model(zmodel, zdim);
            ZigzagSpec spec{M, M->identity(), {}, parse_list(weights, "weights"), depth};
            for (const auto& d : dirs) {
                Vec h = to_vec(parse_list(d, "dir"));
                if (h.size() != M->horizontal_dim())
                    throw ConfigError("dir: expected " + std::to_string(M->horizontal_dim()) + " components");
                if (h.norm() == 0) throw ConfigError("dir: zero vector");
                spec.lines.emplace_back(M, M->identity(), M->embed_horizontal(h / h.norm()));
            }
            if (spec.S.size() != spec.lines.size()) throw ConfigError("weights: one weight per --dir");
            for (double s : spec.S)
                if (!(s > 0)) throw ConfigError("weights: must be positive");
            if (depth < 4) throw ConfigError("depth: must be >= 4");
            ZigzagResult r = zigzag_limit(spec);
            ojson j = {{"lambda", r.lambda},
                       {"degenerate", r.degenerate},
                       {"analytic_degenerate", r.analytic_degenerate},
                       {"certified_depth", r.certified_depth},
                       {"diameter", r.diameter},
                       {"cauchy_gap", r.cauchy_gap},
                       {"drift", r.drift}};
            if (!r.degenerate) {
                j["limit_direction"] = vec_json(M->horizontal(r.limit_line.direction()));
                std::vector<double> sl;
                for (std::size_t i = 0; i < spec.lines.size(); ++i) sl.push_back(slope(r.limit_line, spec.lines[i]));
                j["slopes"] = sl;
            }
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (*fil) {
            ModelPtr M = checked_model(fmodel, fdim);
            Vec a = to_vec(parse_list(base_s, "base-s")), b = to_vec(parse_list(base_t, "base-t"));
            if (a.size() != M->coord_dim() || b.size() != M->coord_dim())
                throw ConfigError("base: expected " + std::to_string(M->coord_dim()) + " coordinates");
            if (!(height_s > 0) || !(height_t > 0)) throw ConfigError("height: must be positive");
            FillingPoint s{MPoint(a), height_s}, t{MPoint(b), height_t};
            RhoResult r = rho_both(M, s, t);
            FillingLine L = common_line(M, s, t);
            auto pt = [](const MPoint& p) { return p.is_infinity() ? ojson("infinity") : vec_json(p.coords()); };
            ojson j = {{"rho", r.vertical},
                       {"rho_cross_ratio", r.cross_ratio},
                       {"line_end_s", pt(L.a())},
                       {"line_end_t", pt(L.a2())}};
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (*rep_cmd) {
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(read_file(in_path));
            } catch (const nlohmann::json::exception& e) {
                throw ConfigError(std::string("in: ") + e.what());
            }
            bool all = true;
            try {
                for (const auto& c : j.at("checks")) {
                    bool pass = c.at("pass").get<bool>();
                    all = all && pass;
                    std::cout << (pass ? "PASS " : "FAIL ") << c.at("id").get<std::string>()
                              << "  max_residual=" << c.at("max_residual") << "  tol=" << c.at("tol") << "\n";
                }
                const auto& s = j.at("summary");
                std::cout << s.at("passed") << "/" << s.at("checks") << " checks passed\n";
            } catch (const nlohmann::json::exception& e) {
                throw ConfigError(std::string("in: not a report (") + e.what() + ")");
            }
            return all ? 0 : 1;
        }
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const IOError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 0;
}

#include "ptolemy/report.hpp"

#include "ptolemy/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

namespace ptolemy {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

int SuiteConfig::effective_dim() const {
    if (dim) return *dim;
    return model == "euclidean" ? 2 : 1;
}

bool Report::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

void validate(const SuiteConfig& c) {
    std::vector<std::string> errs;
    if (c.model != "euclidean" && c.model != "heisenberg")
        errs.push_back("model: expected 'euclidean' or 'heisenberg', got '" + c.model + "'");
    if (c.dim && *c.dim < 1) errs.push_back("dim: must be >= 1, got " + std::to_string(*c.dim));
    for (const auto& s : c.suites)
        if (std::find(all_suites().begin(), all_suites().end(), s) == all_suites().end())
            errs.push_back("suites: unknown suite '" + s + "'");
    if (c.samples && *c.samples < 1)
        errs.push_back("samples: must be >= 1, got " + std::to_string(*c.samples));
    if (c.tol && !(*c.tol > 0)) errs.push_back("tol: must be > 0");
    for (const auto& [id, t] : c.tolerances) {
        bool known = std::any_of(check_registry().begin(), check_registry().end(),
                                 [&](const CheckDef& d) { return d.id == id; });
        if (!known) errs.push_back("tolerances: unknown check '" + id + "'");
        if (!(t > 0)) errs.push_back("tolerances." + id + ": must be > 0");
    }
    if (c.format != "json" && c.format != "csv")
        errs.push_back("format: expected 'json' or 'csv', got '" + c.format + "'");
    if (c.threads < 1) errs.push_back("threads: must be >= 1, got " + std::to_string(c.threads));
    if (errs.empty()) return;
    std::string msg;
    for (const auto& e : errs) msg += (msg.empty() ? "" : "; ") + e;
    throw ConfigError(msg);
}

namespace {

template <class T>
T field(const json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string(key) + ": wrong type");
    }
}

}  // namespace

SuiteConfig config_from_json(const std::string& text, SuiteConfig c) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        if (k == "model") c.model = field<std::string>(j, "model");
        else if (k == "dim") c.dim = field<int>(j, "dim");
        else if (k == "suites") c.suites = field<std::vector<std::string>>(j, "suites");
        else if (k == "samples") c.samples = field<long>(j, "samples");
        else if (k == "tol") c.tol = field<double>(j, "tol");
        else if (k == "tolerances") c.tolerances = field<std::map<std::string, double>>(j, "tolerances");
        else if (k == "seed") c.seed = field<std::uint64_t>(j, "seed");
        else if (k == "out") c.out = field<std::string>(j, "out");
        else if (k == "format") c.format = field<std::string>(j, "format");
        else if (k == "threads") c.threads = field<int>(j, "threads");
        else if (k == "timing") c.timing = field<bool>(j, "timing");
        else throw ConfigError(k + ": unknown field");
    }
    return c;
}

CheckRecord run_check(const CheckDef& d, const SuiteConfig& config, const ModelPtr& model) {
    CheckRecord rec;
    rec.id = d.id;
    rec.suite = d.suite;
    rec.anchor = d.anchor;
    long n = (d.scalable && config.samples) ? *config.samples : d.default_samples;
    rec.tol = model->name() == "heisenberg" ? d.tol_heisenberg : d.tol_euclidean;
    if (auto it = config.tolerances.find(d.id); it != config.tolerances.end()) rec.tol = it->second;
    if (config.tol) rec.tol = *config.tol;

    Rng rng(derive_seed(config.seed, d.id));
    auto t0 = std::chrono::steady_clock::now();
    CheckOutput out;
    try {
        out = d.run(model, n, rng);
    } catch (const Error& e) {
        // A numerical failure inside a check is a failed check, not a crash.
        out.residuals = {std::numeric_limits<double>::infinity()};
        out.note = e.what();
    }
    auto t1 = std::chrono::steady_clock::now();

    rec.residuals = std::move(out.residuals);
    rec.note = std::move(out.note);
    rec.samples = out.samples >= 0 ? out.samples : static_cast<long>(rec.residuals.size());
    rec.max_residual = 0.0;
    bool finite = true;
    for (double r : rec.residuals) {
        if (!std::isfinite(r)) finite = false;
        else rec.max_residual = std::max(rec.max_residual, r);
    }
    if (!finite) rec.max_residual = std::numeric_limits<double>::infinity();
    rec.pass = rec.max_residual <= rec.tol;
    if (config.timing) rec.seconds = std::chrono::duration<double>(t1 - t0).count();
    return rec;
}

Report run_suite(const SuiteConfig& config) {
    validate(config);
    ModelPtr model = make_model(config.model, config.effective_dim());
    std::vector<const CheckDef*> todo;
    for (const auto& d : check_registry()) {
        bool want = config.suites.empty() ||
                    std::find(config.suites.begin(), config.suites.end(), d.suite) != config.suites.end();
        if (want) todo.push_back(&d);
    }
    Report rep;
    rep.config = config;
    rep.checks.resize(todo.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < todo.size();)
            rep.checks[i] = run_check(*todo[i], config, model);
    };
    int nt = std::max(1, std::min<int>(config.threads, static_cast<int>(todo.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < nt; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return rep;
}

std::vector<long> residual_histogram(const std::vector<double>& residuals) {
    // bins: [0] below 1e-16, [1..16] decades [-16,-15) ... [-1,0), [17] >= 1
    std::vector<long> h(18, 0);
    for (double r : residuals) {
        if (!(r >= 1e-16)) {
            ++h[std::isnan(r) ? 17 : 0];
            continue;
        }
        if (r >= 1.0) {
            ++h[17];
            continue;
        }
        int b = static_cast<int>(std::floor(std::log10(r))) + 17;
        ++h[std::clamp(b, 1, 16)];
    }
    return h;
}

namespace {

ojson number_or_null(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

ojson to_ojson(const Report& rep) {
    const SuiteConfig& c = rep.config;
    ojson meta = {{"tool", "ptolemy_verify"},
                 {"model", c.model},
                 {"dim", c.effective_dim()},
                 {"seed", c.seed},
                 {"suites", c.suites.empty() ? all_suites() : c.suites},
                 {"samples", c.samples ? ojson(*c.samples) : ojson(nullptr)},
                 {"tol", c.tol ? ojson(*c.tol) : ojson(nullptr)},
                 {"histogram_bins", "[<1e-16, [1e-16,1e-15), ..., [1e-1,1), >=1]"}};
    long passed = std::count_if(rep.checks.begin(), rep.checks.end(),
                                [](const CheckRecord& r) { return r.pass; });
    ojson summary = {{"checks", rep.checks.size()},
                    {"passed", passed},
                    {"failed", static_cast<long>(rep.checks.size()) - passed},
                    {"all_pass", rep.all_pass()}};
    ojson checks = ojson::array();
    for (const auto& r : rep.checks) {
        checks.push_back({{"id", r.id},
                          {"suite", r.suite},
                          {"anchor", r.anchor},
                          {"samples", r.samples},
                          {"max_residual", number_or_null(r.max_residual)},
                          {"tol", r.tol},
                          {"pass", r.pass},
                          {"seconds", r.seconds ? ojson(*r.seconds) : ojson(nullptr)},
                          {"histogram", residual_histogram(r.residuals)},
                          {"note", r.note}});
    }
    return {{"meta", meta}, {"summary", summary}, {"checks", checks}};
}

}  // namespace

std::string emit_report(const Report& rep, const std::string& format) {
    if (format == "json") return to_ojson(rep).dump(2) + "\n";
    if (format == "csv") {
        std::ostringstream os;
        os.precision(17);
        os << "check_id,index,residual\n";
        for (const auto& r : rep.checks)
            for (std::size_t i = 0; i < r.residuals.size(); ++i)
                os << r.id << ',' << i << ',' << r.residuals[i] << '\n';
        return os.str();
    }
    throw ConfigError("format: expected 'json' or 'csv', got '" + format + "'");
}

void write_report(const Report& rep, const std::string& path, const std::string& format) {
    std::string text = emit_report(rep, format);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IOError("cannot open '" + path + "' for writing");
    f << text;
    if (!f.flush()) throw IOError("write to '" + path + "' failed");
}

}  // namespace ptolemy

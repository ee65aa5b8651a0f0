// hew: command-line front end for the HEW library.
//
// Exit codes: 0 success, 2 input error, 3 estimation failure, 4 internal
// invariant violation.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hew/bayes.hpp"
#include "hew/dataset.hpp"
#include "hew/distributions.hpp"
#include "hew/estimation.hpp"
#include "hew/gof.hpp"
#include "hew/montecarlo.hpp"
#include "hew/rng.hpp"
#include "hew/simd/kernels.hpp"
#include "result_json.hpp"

namespace fs = std::filesystem;
using hew::cli::Json;
using hew::cli::number;

namespace {

enum ExitCode { kOk = 0, kInputError = 2, kEstimationError = 3, kInternalError = 4 };

class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw InvariantViolation(what);
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::uint64_t default_seed() {
    if (const char* env = std::getenv("HEW_SEED")) {
        try {
            std::size_t used = 0;
            const auto v = std::stoull(env, &used);
            if (used == std::string(env).size()) return v;
        } catch (const std::exception&) {
        }
        throw hew::InputError("HEW_SEED must be a non-negative integer");
    }
    return 1;
}

struct Globals {
    std::uint64_t seed = 1;
    std::size_t threads = 0;
    std::string simd;  // empty: $HEW_SIMD or detection
};

hew::HewParams params_from(const std::vector<double>& v, const char* flag) {
    if (v.size() != 4) throw hew::InputError(std::string(flag) + " takes four values: theta k beta alpha");
    return {v[0], v[1], v[2], v[3]};
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw hew::InputError("cannot write " + path);
    out << text;
    if (!out) throw hew::InputError("failed writing " + path);
}

void write_document(const std::string& path, const Json& doc) { write_text(path, doc.dump(2) + "\n"); }

Json new_document(const Globals& g, Json command) {
    return Json{{"schema_version", hew::cli::kSchemaVersion}, {"command", std::move(command)}, {"seed", g.seed}};
}

struct LoadedData {
    hew::Sample sample;
    Json description;
};

// Files named like a bundled reference data set are checked against its
// published summary.
LoadedData load_data(const std::string& path) {
    auto values = hew::read_values_csv(fs::path(path));
    Json desc{{"path", path}, {"n", values.size()}};
    if (values.size() >= 3) {
        const auto stats = hew::summarize(values);
        desc["summary"] = hew::cli::summary_json(stats);
        for (const auto& ref : hew::reference_datasets()) {
            if (fs::path(path).filename() == fs::path(std::string(ref.file))) {
                if (auto why = hew::check_reference(stats, ref)) {
                    throw hew::InputError(path + " does not match the " + std::string(ref.name) +
                                          " reference summary: " + *why);
                }
                desc["reference"] = std::string(ref.name);
            }
        }
    }
    return {hew::Sample(std::move(values), hew::SampleSource::File), std::move(desc)};
}

hew::PValueMethod parse_pvalues(const std::string& s) {
    if (s == "bootstrap") return hew::PValueMethod::Bootstrap;
    if (s == "asymptotic") return hew::PValueMethod::Asymptotic;
    throw hew::InputError("--pvalues must be bootstrap or asymptotic");
}

// ---------------------------------------------------------------------------
// fit

struct FitArgs {
    std::string data;
    std::string method = "mle";
    std::string optimizer = "nm";
    std::vector<double> start;
    std::size_t restarts = 5;
    std::size_t max_evals = 20000;
    double tolerance = 1e-8;
    double ci_level = 0.95;
    std::string pvalues = "bootstrap";
    std::size_t bootstrap = 999;
    std::string out;
};

int run_fit(const Globals& g, const FitArgs& a) {
    const auto t0 = Clock::now();
    const auto data = load_data(a.data);
    hew::FitConfig cfg;
    cfg.objective = hew::parse_objective(a.method);
    cfg.optimizer = hew::parse_optimizer(a.optimizer);
    if (!a.start.empty()) cfg.start = params_from(a.start, "--start");
    cfg.restarts = a.restarts;
    cfg.max_evaluations = a.max_evals;
    cfg.tolerance = a.tolerance;
    cfg.ci_level = a.ci_level;
    cfg.seed = g.seed;
    cfg.standard_errors = cfg.objective == hew::ObjectiveKind::MLE;
    const auto pmethod = parse_pvalues(a.pvalues);

    const auto fit = hew::optimize(cfg, data.sample);
    const auto t_fit = seconds_since(t0);
    hew::BootstrapConfig bcfg{a.bootstrap, hew::derive_seed(g.seed, 1), g.threads, 2};
    const auto gof = hew::gof_report(hew::ModelKind::HEW, fit.estimates, data.sample, pmethod, bcfg);
    require(std::abs(gof.loglik - fit.loglik) <= 1e-9 * (1.0 + std::abs(fit.loglik)),
            "log-likelihood mismatch between fit and report");

    Json command{{"name", "fit"},       {"data", a.data},           {"method", hew::objective_name(cfg.objective)},
                 {"optimizer", a.optimizer}, {"start", a.start.empty() ? Json("auto") : Json(a.start)},
                 {"restarts", a.restarts},   {"max_evals", a.max_evals}, {"tolerance", a.tolerance},
                 {"pvalues", a.pvalues},     {"bootstrap", a.bootstrap}};
    Json doc = new_document(g, std::move(command));
    doc["dataset"] = data.description;
    doc["models"] = Json::array({Json{{"model", "HEW"},
                                      {"status", "ok"},
                                      {"parameters", hew::cli::params_json(fit.estimates)},
                                      {"fit", hew::cli::fit_json(fit, cfg.optimizer, cfg.ci_level)},
                                      {"gof", hew::cli::gof_json(gof)}}});
    doc["timing"] = Json{{"fit_seconds", t_fit}, {"total_seconds", seconds_since(t0)}};
    write_document(a.out, doc);
    return kOk;
}

// ---------------------------------------------------------------------------
// compare

struct CompareArgs {
    std::string data;
    std::size_t restarts = 5;
    std::string pvalues = "bootstrap";
    std::size_t bootstrap = 999;
    std::string out;
};

int run_compare(const Globals& g, const CompareArgs& a) {
    const auto t0 = Clock::now();
    const auto data = load_data(a.data);
    const auto pmethod = parse_pvalues(a.pvalues);
    Json models = Json::array();
    Json timing = Json::object();
    std::string best;
    double best_aic = std::numeric_limits<double>::infinity();

    const hew::ModelKind kinds[] = {hew::ModelKind::HEW, hew::ModelKind::Weibull, hew::ModelKind::TruncatedWeibull,
                                    hew::ModelKind::ExpWeibull};
    for (std::size_t i = 0; i < 4; ++i) {
        const auto kind = kinds[i];
        const std::string name(hew::model_kind_name(kind));
        const auto tm = Clock::now();
        hew::BootstrapConfig bcfg{a.bootstrap, hew::derive_seed(g.seed, 10 + i), g.threads, 2};
        try {
            Json entry{{"model", name}, {"status", "ok"}};
            double aic = 0.0;
            if (kind == hew::ModelKind::HEW) {
                hew::FitConfig cfg;
                cfg.restarts = a.restarts;
                cfg.seed = g.seed;
                cfg.standard_errors = true;
                const auto fit = hew::optimize(cfg, data.sample);
                const auto gof = hew::gof_report(kind, fit.estimates, data.sample, pmethod, bcfg);
                entry["parameters"] = hew::cli::params_json(fit.estimates);
                entry["parameter_count"] = 4;
                entry["fit"] = hew::cli::fit_json(fit, cfg.optimizer, cfg.ci_level);
                entry["gof"] = hew::cli::gof_json(gof);
                aic = fit.aic;
            } else {
                const auto fit = hew::fit_comparison(kind, data.sample, a.restarts, g.seed);
                const auto gof = hew::gof_report(kind, hew::to_model(fit.model), data.sample, pmethod, bcfg);
                entry["parameters"] = hew::cli::comparison_json(fit.model);
                entry["parameter_count"] = 2;
                entry["fit"] = Json{{"loglik", number(fit.loglik)},
                                    {"aic", number(fit.aic)},
                                    {"bic", number(fit.bic)},
                                    {"converged", fit.converged},
                                    {"evaluations", fit.evaluations}};
                entry["gof"] = hew::cli::gof_json(gof);
                aic = fit.aic;
            }
            if (aic < best_aic) {
                best_aic = aic;
                best = name;
            }
            models.push_back(std::move(entry));
        } catch (const hew::EstimationError& e) {
            models.push_back(Json{{"model", name}, {"status", "failed"}, {"error", e.what()}});
        }
        timing[name + "_seconds"] = seconds_since(tm);
    }
    if (best.empty()) throw hew::EstimationError("compare: no model could be fitted");

    Json command{{"name", "compare"},
                 {"data", a.data},
                 {"restarts", a.restarts},
                 {"pvalues", a.pvalues},
                 {"bootstrap", a.bootstrap}};
    Json doc = new_document(g, std::move(command));
    doc["dataset"] = data.description;
    doc["models"] = std::move(models);
    doc["best_aic"] = best;
    timing["total_seconds"] = seconds_since(t0);
    doc["timing"] = std::move(timing);
    write_document(a.out, doc);
    return kOk;
}

// ---------------------------------------------------------------------------
// bayes

struct BayesArgs {
    std::string data;
    std::size_t iterations = 50000;
    std::size_t burn_in = 10000;
    std::size_t thin = 5;
    std::string priors = "auto";
    double proposal_sd = 0.1;
    double level = 0.95;
    std::string chain;
    std::string out;
};

// CSV with a header naming either (parameter, mean, sd) or (parameter, shape, rate).
hew::PriorSet read_priors(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw hew::InputError("cannot open " + path);
    std::string line;
    std::size_t line_no = 0;
    bool moments = true;
    bool header_seen = false;
    std::array<std::optional<hew::GammaPrior>, 4> set;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) {
            const auto b = cell.find_first_not_of(" \t");
            const auto e = cell.find_last_not_of(" \t");
            f.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
        }
        const std::string where = path + ": line " + std::to_string(line_no);
        if (f.size() != 3) throw hew::InputError(where + ": expected three fields", line_no);
        if (!header_seen) {
            header_seen = true;
            if (f[1] == "mean" && f[2] == "sd") {
                moments = true;
            } else if (f[1] == "shape" && f[2] == "rate") {
                moments = false;
            } else {
                throw hew::InputError(where + ": header must be parameter,mean,sd or parameter,shape,rate", line_no);
            }
            continue;
        }
        std::size_t idx = 4;
        for (std::size_t i = 0; i < 4; ++i) {
            if (f[0] == hew::kParamNames[i]) idx = i;
        }
        if (idx == 4) throw hew::InputError(where + ": unknown parameter '" + f[0] + "'", line_no);
        double a = 0.0, b = 0.0;
        try {
            a = std::stod(f[1]);
            b = std::stod(f[2]);
        } catch (const std::exception&) {
            throw hew::InputError(where + ": not a number", line_no);
        }
        try {
            set[idx] = moments ? hew::elicit_gamma(a, b) : hew::GammaPrior(a, b);
        } catch (const hew::DomainError& e) {
            throw hew::InputError(where + ": " + e.what(), line_no);
        }
    }
    for (std::size_t i = 0; i < 4; ++i) {
        if (!set[i]) throw hew::InputError(path + ": no prior for " + std::string(hew::kParamNames[i]));
    }
    return {*set[0], *set[1], *set[2], *set[3]};
}

std::string chain_path_for(const BayesArgs& a) {
    if (!a.chain.empty()) return a.chain;
    if (a.out.empty() || a.out == "-") return {};
    fs::path p(a.out);
    p.replace_extension(".chain.csv");
    return p.string();
}

int run_bayes(const Globals& g, const BayesArgs& a) {
    const auto t0 = Clock::now();
    if (a.iterations <= a.burn_in) throw hew::InputError("--iterations must exceed --burn-in");
    const auto data = load_data(a.data);

    std::optional<hew::PriorSet> priors;
    std::optional<hew::HewParams> start;
    Json prior_source;
    if (a.priors == "auto") {
        hew::FitConfig cfg;
        cfg.seed = g.seed;
        cfg.standard_errors = true;
        try {
            const auto mle = hew::optimize(cfg, data.sample);
            priors = hew::elicit_priors(mle);
            start = mle.estimates;
        } catch (const hew::EstimationError& e) {
            throw hew::EstimationError(std::string("automatic prior elicitation failed (") + e.what() +
                                       "); pass explicit priors with --priors <file>");
        }
        prior_source = "auto";
    } else {
        priors = read_priors(a.priors);
        hew::Point4 means{};
        for (std::size_t i = 0; i < 4; ++i) means[i] = (*priors)[i].mean();
        start = hew::HewParams::from_array(means);
        prior_source = a.priors;
    }

    hew::MhConfig mh;
    mh.iterations = a.iterations;
    mh.burn_in = a.burn_in;
    mh.thinning = a.thin;
    mh.seed = hew::derive_seed(g.seed, 2);
    mh.proposal_scale.fill(a.proposal_sd);
    const auto chain = hew::mh_sample(*priors, data.sample, *start, mh);
    const auto post = hew::summarize(chain, a.level);
    for (std::size_t i = 0; i < 4; ++i) {
        require(post.hpd[i].width() <= post.equal_tailed[i].width(), "HPD interval wider than equal-tailed interval");
    }

    const std::string chain_path = chain_path_for(a);
    if (!chain_path.empty()) {
        std::ostringstream csv;
        hew::write_chain_csv(chain, csv);
        write_text(chain_path, csv.str());
    }

    Json command{{"name", "bayes"},         {"data", a.data},     {"iterations", a.iterations},
                 {"burn_in", a.burn_in},     {"thin", a.thin},     {"priors", prior_source},
                 {"proposal_sd", a.proposal_sd}, {"level", a.level}};
    Json doc = new_document(g, std::move(command));
    doc["dataset"] = data.description;
    doc["priors"] = hew::cli::prior_json(*priors);
    doc["start"] = hew::cli::params_json(*start);
    doc["posterior"] = hew::cli::posterior_json(post, chain);
    doc["chain_csv"] = chain_path.empty() ? Json(nullptr) : Json(chain_path);
    doc["timing"] = Json{{"total_seconds", seconds_since(t0)}};
    write_document(a.out, doc);
    return kOk;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
    std::vector<double> truth{0.1, 0.13, 10.0, 1.0};
    std::vector<std::size_t> sizes{25, 50, 100, 200};
    std::size_t reps = 200;
    std::vector<std::string> methods{"mle", "ols", "wls", "mps", "ad", "cvm", "bayes"};
    std::size_t restarts = 5;
    std::string start = "truth";
    std::size_t bayes_iterations = 20000;
    std::size_t bayes_burn_in = 5000;
    std::size_t bayes_thin = 5;
    std::string csv;
    std::string out;
};

int run_simulate(const Globals& g, const SimulateArgs& a) {
    const auto t0 = Clock::now();
    hew::StudyConfig cfg;
    cfg.truth = params_from(a.truth, "--truth");
    cfg.sample_sizes = a.sizes;
    cfg.replications = a.reps;
    cfg.methods.clear();
    for (const auto& m : a.methods) cfg.methods.push_back(hew::parse_study_method(m));
    cfg.seed = g.seed;
    cfg.restarts = a.restarts;
    if (a.start != "truth" && a.start != "auto") throw hew::InputError("--start must be truth or auto");
    cfg.start_at_truth = a.start == "truth";
    cfg.bayes.iterations = a.bayes_iterations;
    cfg.bayes.burn_in = a.bayes_burn_in;
    cfg.bayes.thinning = a.bayes_thin;
    cfg.threads = g.threads;
    if (cfg.bayes.iterations <= cfg.bayes.burn_in) {
        throw hew::InputError("--bayes-iterations must exceed --bayes-burn-in");
    }
    cfg.validate();

    const auto report = hew::run_study(cfg);
    require(report.cells.size() == cfg.methods.size() * cfg.sample_sizes.size(), "study cell count");
    for (const auto& c : report.cells) {
        require(c.failures + c.successes == cfg.replications, "study replication count");
        for (std::size_t i = 0; i < 4; ++i) {
            if (std::isfinite(c.rmse[i]) && std::isfinite(c.bias[i])) {
                require(std::abs(c.bias[i]) <= c.rmse[i] * (1.0 + 1e-12),
                        "rmse smaller than |bias|");
            }
        }
    }

    std::string csv_path = a.csv;
    if (csv_path.empty() && !a.out.empty() && a.out != "-") {
        csv_path = fs::path(a.out).replace_extension(".csv").string();
    }
    if (!csv_path.empty()) {
        std::ostringstream csv;
        hew::write_study_csv(report, csv);
        write_text(csv_path, csv.str());
    }

    Json command{{"name", "simulate"},   {"truth", a.truth},       {"sizes", a.sizes},
                 {"reps", a.reps},       {"methods", a.methods},   {"restarts", a.restarts},
                 {"start", a.start},     {"bayes_iterations", a.bayes_iterations},
                 {"bayes_burn_in", a.bayes_burn_in}, {"bayes_thin", a.bayes_thin}};
    Json doc = new_document(g, std::move(command));
    doc["study"] = hew::cli::study_json(cfg, report);
    doc["report_csv"] = csv_path.empty() ? Json(nullptr) : Json(csv_path);
    doc["timing"] = Json{{"cells", hew::cli::study_timing_json(report)}, {"total_seconds", seconds_since(t0)}};
    write_document(a.out, doc);
    return kOk;
}

// ---------------------------------------------------------------------------
// sample and grid

struct SampleArgs {
    std::vector<double> params;
    std::size_t n = 100;
    std::string out;
};

int run_sample(const Globals& g, const SampleArgs& a) {
    const auto p = params_from(a.params, "--params");
    if (a.n < 1) throw hew::InputError("--n must be >= 1");
    const auto draws = hew::draw_model(p, a.n, g.seed);
    std::ostringstream out;
    out << std::setprecision(17);
    for (double x : draws) {
        require(std::isfinite(x) && x > 0.0, "non-positive draw");
        out << x << '\n';
    }
    write_text(a.out, out.str());
    return kOk;
}

struct GridArgs {
    std::vector<double> params;
    double xmin = 0.0;
    double xmax = 5.0;
    std::size_t points = 101;
    std::string out;
};

int run_grid(const GridArgs& a) {
    const auto p = params_from(a.params, "--params");
    if (!(a.xmin >= 0.0) || !(a.xmin < a.xmax) || !std::isfinite(a.xmax)) {
        throw hew::InputError("grid needs 0 <= xmin < xmax < infinity");
    }
    if (a.points < 2) throw hew::InputError("--points must be >= 2");
    std::ostringstream out;
    out << std::setprecision(17) << "x,pdf,cdf,sf\n";
    const double step = (a.xmax - a.xmin) / static_cast<double>(a.points - 1);
    for (std::size_t i = 0; i < a.points; ++i) {
        const double x = i + 1 == a.points ? a.xmax : a.xmin + step * static_cast<double>(i);
        const double f = hew::hew_pdf(p, x);
        const double c = hew::hew_cdf(p, x);
        const double s = hew::hew_sf(p, x);
        require(std::abs(c + s - 1.0) <= 1e-14, "cdf + sf != 1 on the grid");
        out << x << ',' << f << ',' << c << ',' << s << '\n';
    }
    write_text(a.out, out.str());
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Harris extended Weibull: fitting, comparison, Bayesian analysis and simulation"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    std::optional<std::uint64_t> seed_opt;
    app.add_option("--seed", seed_opt, "Random seed (default: $HEW_SEED, else 1)");
    app.add_option("--threads", g.threads, "Worker threads; 0 uses $HEW_THREADS or all cores");
    app.add_option("--simd", g.simd, "Kernel variant: auto, scalar or avx2 (default: $HEW_SIMD, else auto)")->check(CLI::IsMember({"auto", "scalar", "avx2"}));

    FitArgs fit;
    auto* fit_cmd = app.add_subcommand("fit", "Fit HEW by one estimation method");
    fit_cmd->add_option("--data", fit.data, "CSV file, one value per row")->required();
    fit_cmd->add_option("--method", fit.method, "mle, ols, wls, mps, ad or cvm");
    fit_cmd->add_option("--optimizer", fit.optimizer, "nm (Nelder-Mead) or ga (genetic + Nelder-Mead polish)");
    fit_cmd->add_option("--start", fit.start, "Start point theta k beta alpha (default: automatic)")->expected(4);
    fit_cmd->add_option("--restarts", fit.restarts, "Jittered restarts");
    fit_cmd->add_option("--max-evals", fit.max_evals, "Objective evaluations per restart");
    fit_cmd->add_option("--tolerance", fit.tolerance, "Convergence tolerance in log-parameter space");
    fit_cmd->add_option("--ci-level", fit.ci_level, "Wald interval level (MLE)");
    fit_cmd->add_option("--pvalues", fit.pvalues, "bootstrap or asymptotic");
    fit_cmd->add_option("--bootstrap", fit.bootstrap, "Bootstrap replicates");
    fit_cmd->add_option("--out", fit.out, "JSON output (default: stdout)");

    CompareArgs cmp;
    auto* cmp_cmd = app.add_subcommand("compare", "Fit HEW, Weib, tWeib and expWeib by maximum likelihood");
    cmp_cmd->add_option("--data", cmp.data, "CSV file, one value per row")->required();
    cmp_cmd->add_option("--restarts", cmp.restarts, "Jittered restarts per model");
    cmp_cmd->add_option("--pvalues", cmp.pvalues, "bootstrap or asymptotic");
    cmp_cmd->add_option("--bootstrap", cmp.bootstrap, "Bootstrap replicates");
    cmp_cmd->add_option("--out", cmp.out, "JSON output (default: stdout)");

    BayesArgs bay;
    auto* bay_cmd = app.add_subcommand("bayes", "Metropolis-Hastings posterior under Gamma priors");
    bay_cmd->add_option("--data", bay.data, "CSV file, one value per row")->required();
    bay_cmd->add_option("--iterations", bay.iterations, "Total iterations");
    bay_cmd->add_option("--burn-in", bay.burn_in, "Discarded leading iterations");
    bay_cmd->add_option("--thin", bay.thin, "Keep every n-th iteration after burn-in");
    bay_cmd->add_option("--priors", bay.priors, "auto, or a CSV with parameter,mean,sd or parameter,shape,rate");
    bay_cmd->add_option("--proposal-sd", bay.proposal_sd, "Random-walk step sd for every parameter");
    bay_cmd->add_option("--level", bay.level, "Interval level");
    bay_cmd->add_option("--chain", bay.chain, "Chain CSV (default: next to --out)");
    bay_cmd->add_option("--out", bay.out, "JSON output (default: stdout)");

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo study of the estimators");
    sim_cmd->add_option("--truth", sim.truth, "theta k beta alpha")->expected(4);
    sim_cmd->add_option("--sizes", sim.sizes, "Sample sizes")->expected(1, -1);
    sim_cmd->add_option("--reps", sim.reps, "Replications per cell");
    sim_cmd->add_option("--methods", sim.methods, "Subset of mle ols wls mps ad cvm bayes")->expected(1, -1);
    sim_cmd->add_option("--restarts", sim.restarts, "Restarts per fit");
    sim_cmd->add_option("--start", sim.start, "truth or auto");
    sim_cmd->add_option("--bayes-iterations", sim.bayes_iterations, "MH iterations per Bayes fit");
    sim_cmd->add_option("--bayes-burn-in", sim.bayes_burn_in, "MH burn-in per Bayes fit");
    sim_cmd->add_option("--bayes-thin", sim.bayes_thin, "MH thinning per Bayes fit");
    sim_cmd->add_option("--csv", sim.csv, "Long-format CSV (default: next to --out)");
    sim_cmd->add_option("--out", sim.out, "JSON output (default: stdout)");

    SampleArgs smp;
    auto* smp_cmd = app.add_subcommand("sample", "Draw from HEW, one value per line");
    smp_cmd->add_option("--params", smp.params, "theta k beta alpha")->expected(4)->required();
    smp_cmd->add_option("--n", smp.n, "Number of draws");
    smp_cmd->add_option("--out", smp.out, "Output file (default: stdout)");

    GridArgs grd;
    auto* grd_cmd = app.add_subcommand("grid", "Tabulate pdf, cdf and sf as CSV");
    grd_cmd->add_option("--params", grd.params, "theta k beta alpha")->expected(4)->required();
    grd_cmd->add_option("--xmin", grd.xmin, "First grid point");
    grd_cmd->add_option("--xmax", grd.xmax, "Last grid point");
    grd_cmd->add_option("--points", grd.points, "Number of grid points");
    grd_cmd->add_option("--out", grd.out, "Output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kInputError;
    }

    try {
        g.seed = seed_opt ? *seed_opt : default_seed();
        if (!g.simd.empty()) hew::simd::set_isa(hew::simd::parse_isa(g.simd));
        if (fit_cmd->parsed()) return run_fit(g, fit);
        if (cmp_cmd->parsed()) return run_compare(g, cmp);
        if (bay_cmd->parsed()) return run_bayes(g, bay);
        if (sim_cmd->parsed()) return run_simulate(g, sim);
        if (smp_cmd->parsed()) return run_sample(g, smp);
        if (grd_cmd->parsed()) return run_grid(grd);
    } catch (const hew::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const hew::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const hew::EstimationError& e) {
        std::cerr << "estimation failed: " << e.what() << '\n';
        if (!e.diagnostics().empty()) std::cerr << e.diagnostics() << '\n';
        return kEstimationError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternalError;
    }
    return kInternalError;
}

#include "result_json.hpp"

#include <cmath>
#include <string>

namespace hew::cli {

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json params_json(const HewParams& p) {
    return Json{{"theta", number(p.theta())}, {"k", number(p.k())}, {"beta", number(p.beta())},
                {"alpha", number(p.alpha())}};
}

Json interval_json(const Interval& i) { return Json::array({number(i.lower), number(i.upper)}); }

namespace {

template <class Values>
Json per_parameter(const Values& v) {
    Json j = Json::object();
    for (std::size_t i = 0; i < 4; ++i) j[kParamNames[i]] = number(v[i]);
    return j;
}

Json per_parameter_intervals(const std::array<Interval, 4>& v) {
    Json j = Json::object();
    for (std::size_t i = 0; i < 4; ++i) j[kParamNames[i]] = interval_json(v[i]);
    return j;
}

Json test_json(const TestResult& t) { return Json{{"statistic", number(t.statistic)}, {"p_value", number(t.p_value)}}; }

}  // namespace

Json summary_json(const SummaryStats& s) {
    return Json{{"n", s.n},           {"min", number(s.min)},   {"q1", number(s.q1)},
                {"median", number(s.median)}, {"mean", number(s.mean)}, {"q3", number(s.q3)},
                {"max", number(s.max)},       {"skewness", number(s.skewness)}};
}

Json fit_json(const FitResult& r, OptimizerKind optimizer, double ci_level) {
    Json j{{"objective", objective_name(r.objective)},
           {"optimizer", optimizer_name(optimizer)},
           {"estimates", params_json(r.estimates)},
           {"std_errors", r.std_errors ? per_parameter(*r.std_errors) : Json(nullptr)},
           {"ci", r.ci ? per_parameter_intervals(*r.ci) : Json(nullptr)},
           {"ci_level", ci_level},
           {"loglik", number(r.loglik)},
           {"objective_value", number(r.objective_value)},
           {"aic", number(r.aic)},
           {"bic", number(r.bic)},
           {"converged", r.converged},
           {"evaluations", r.evaluations},
           {"diagnostics",
            {{"tied_spacings", r.diagnostics.tied_spacings}, {"clamped_cdf", r.diagnostics.clamped_cdf}}}};
    return j;
}

Json comparison_json(const ComparisonModel& m) {
    if (const auto* w = std::get_if<Weibull>(&m)) return Json{{"beta", number(w->beta)}, {"alpha", number(w->alpha)}};
    if (const auto* t = std::get_if<TruncatedWeibull>(&m)) {
        return Json{{"beta", number(t->beta)}, {"alpha", number(t->alpha)}, {"gamma", number(t->gamma)}};
    }
    const auto& e = std::get<ExpWeibull>(m);
    return Json{{"theta", number(e.theta)}, {"alpha", number(e.alpha)}};
}

Json gof_json(const GofReport& g) {
    return Json{{"ks", test_json(g.ks)},
                {"ad", test_json(g.ad)},
                {"cvm", test_json(g.cvm)},
                {"loglik", number(g.loglik)},
                {"aic", number(g.aic)},
                {"bic", number(g.bic)},
                {"p_value_method", g.p_value_method == PValueMethod::Bootstrap ? "bootstrap" : "asymptotic"},
                {"bootstrap_replicates", g.bootstrap_replicates},
                {"bootstrap_failures", g.bootstrap_failures}};
}

Json prior_json(const PriorSet& priors) {
    Json j = Json::object();
    for (std::size_t i = 0; i < 4; ++i) {
        j[kParamNames[i]] = Json{{"shape", number(priors[i].shape())}, {"rate", number(priors[i].rate())}};
    }
    return j;
}

Json posterior_json(const PosteriorSummary& p, const Chain& c) {
    return Json{{"level", p.level},
                {"median", params_json(p.median)},
                {"hpd", per_parameter_intervals(p.hpd)},
                {"equal_tailed", per_parameter_intervals(p.equal_tailed)},
                {"acceptance_rate", number(p.acceptance_rate)},
                {"draws", c.draws.size()},
                {"burn_in", c.burn_in},
                {"thinning", c.thinning},
                {"proposal_sd", per_parameter(c.proposal_scale)},
                {"warning", c.warning ? Json(*c.warning) : Json(nullptr)}};
}

Json study_json(const StudyConfig& cfg, const StudyReport& r) {
    Json methods = Json::array();
    for (auto m : cfg.methods) methods.push_back(study_method_name(m));
    Json cells = Json::array();
    for (const auto& c : r.cells) {
        cells.push_back(Json{{"method", study_method_name(c.method)},
                             {"n", c.n},
                             {"successes", c.successes},
                             {"failures", c.failures},
                             {"valid", c.valid},
                             {"rmse", per_parameter(c.rmse)},
                             {"bias", per_parameter(c.bias)}});
    }
    return Json{{"truth", params_json(cfg.truth)},
                {"sizes", cfg.sample_sizes},
                {"replications", cfg.replications},
                {"methods", methods},
                {"restarts", cfg.restarts},
                {"start_at_truth", cfg.start_at_truth},
                {"cells", cells}};
}

Json study_timing_json(const StudyReport& r) {
    Json cells = Json::array();
    for (const auto& c : r.cells) {
        cells.push_back(
            Json{{"method", study_method_name(c.method)}, {"n", c.n}, {"mean_seconds", number(c.mean_seconds)}});
    }
    return cells;
}

}  // namespace hew::cli

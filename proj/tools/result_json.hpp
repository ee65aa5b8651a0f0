#pragma once

// JSON encodings of library results for the command-line tool. Non-finite
// numbers are written as null.

#include <json.hpp>

#include "hew/bayes.hpp"
#include "hew/dataset.hpp"
#include "hew/estimation.hpp"
#include "hew/gof.hpp"
#include "hew/montecarlo.hpp"

namespace hew::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0.0";

Json number(double v);
Json params_json(const HewParams& p);
Json interval_json(const Interval& i);
Json summary_json(const SummaryStats& s);
Json fit_json(const FitResult& r, OptimizerKind optimizer, double ci_level);
Json comparison_json(const ComparisonModel& m);
Json gof_json(const GofReport& g);
Json prior_json(const PriorSet& priors);
Json posterior_json(const PosteriorSummary& p, const Chain& c);
/// Deterministic part of a study report; per-cell timings go to study_timing_json.
Json study_json(const StudyConfig& cfg, const StudyReport& r);
Json study_timing_json(const StudyReport& r);

}  // namespace hew::cli

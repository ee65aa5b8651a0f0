#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "hew/montecarlo.hpp"
#include "hew/params.hpp"

using namespace hew;

namespace {

StudyConfig small_config() {
    StudyConfig cfg;
    cfg.truth = HewParams(2.0, 2.0, 11.0, 2.0);
    cfg.sample_sizes = {10, 20};
    cfg.replications = 2;
    cfg.methods = {StudyMethod::MLE, StudyMethod::AD};
    cfg.threads = 1;
    return cfg;
}

}  // namespace

TEST_CASE("an estimator that returns the truth has zero error") {
    const auto cfg = small_config();
    const auto rep = run_study(cfg, [&](StudyMethod, const Sample&, std::uint64_t, std::size_t) {
        return std::optional<HewParams>(cfg.truth);
    });
    CHECK(rep.cells.size() == 4);
    for (const auto& c : rep.cells) {
        CHECK(c.successes == 2);
        CHECK(c.failures == 0);
        CHECK(c.valid);
        for (int i = 0; i < 4; ++i) {
            CHECK(c.rmse[i] == 0.0);
            CHECK(c.bias[i] == 0.0);
        }
    }
}

TEST_CASE("symmetric errors give unit RMSE and zero bias") {
    const auto cfg = small_config();
    const auto t = cfg.truth.to_array();
    const auto rep = run_study(cfg, [&](StudyMethod, const Sample&, std::uint64_t, std::size_t r) {
        const double d = r == 0 ? 1.0 : -1.0;
        return std::optional<HewParams>(HewParams(t[0] + d, t[1] + d, t[2] + d, t[3] + d));
    });
    for (const auto& c : rep.cells) {
        for (int i = 0; i < 4; ++i) {
            CHECK(c.rmse[i] == doctest::Approx(1.0).epsilon(1e-15));
            CHECK(std::abs(c.bias[i]) < 1e-15);
        }
    }
    const auto& c = rep.cell(StudyMethod::AD, 20);
    CHECK(c.method == StudyMethod::AD);
    CHECK(c.n == 20);
    CHECK_THROWS(rep.cell(StudyMethod::OLS, 20));
}

TEST_CASE("aggregation arithmetic") {
    const HewParams truth(1, 1, 1, 1);
    const std::vector<std::optional<HewParams>> est{HewParams(2, 1, 1, 1), HewParams(4, 1, 1, 1), std::nullopt};
    const auto c = aggregate_cell(StudyMethod::MLE, 30, truth, est, 3.0);
    // errors 1 and 3: bias 2, rmse sqrt(5)
    CHECK(c.bias[0] == doctest::Approx(2.0));
    CHECK(c.rmse[0] == doctest::Approx(std::sqrt(5.0)));
    CHECK(c.rmse[1] == 0.0);
    CHECK(c.successes == 2);
    CHECK(c.failures == 1);
    CHECK_FALSE(c.valid);  // one in three exceeds 20%
    CHECK(c.mean_seconds == doctest::Approx(1.0));
    for (int i = 0; i < 4; ++i) CHECK(c.rmse[i] * c.rmse[i] - c.bias[i] * c.bias[i] >= -1e-12);

    // estimates run off to the edge of the representable range stay finite
    const std::vector<std::optional<HewParams>> wild{HewParams(1.5e308, 1, 1, 1), HewParams(1e308, 1, 1, 1)};
    const auto w = aggregate_cell(StudyMethod::CvM, 30, truth, wild, 1.0);
    CHECK(std::isfinite(w.rmse[0]));
    CHECK(w.rmse[0] == doctest::Approx(std::sqrt((2.25 + 1.0) / 2.0) * 1e308));
    CHECK(w.bias[0] == doctest::Approx(1.25e308));
}

TEST_CASE("failures are counted and flag the cell") {
    auto cfg = small_config();
    cfg.replications = 10;
    const auto rep = run_study(cfg, [&](StudyMethod m, const Sample&, std::uint64_t, std::size_t r) -> std::optional<HewParams> {
        if (m == StudyMethod::MLE && r < 3) return std::nullopt;
        if (m == StudyMethod::AD && r == 0) throw EstimationError("stub failure");
        return cfg.truth;
    });
    const auto& mle = rep.cell(StudyMethod::MLE, 10);
    CHECK(mle.failures == 3);
    CHECK(mle.successes == 7);
    CHECK_FALSE(mle.valid);
    const auto& ad = rep.cell(StudyMethod::AD, 10);
    CHECK(ad.failures == 1);
    CHECK(ad.valid);
}

TEST_CASE("each replication sees its own derived sample") {
    auto cfg = small_config();
    cfg.replications = 4;
    std::vector<double> firsts(4, 0.0);
    run_study(cfg, [&](StudyMethod m, const Sample& s, std::uint64_t, std::size_t r) {
        if (m == StudyMethod::MLE && s.size() == 10) firsts[r] = s.min();
        return std::optional<HewParams>(cfg.truth);
    });
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) CHECK(firsts[i] != firsts[j]);
    CHECK(replication_seed(7, 0, 25) != replication_seed(7, 1, 25));
    CHECK(replication_seed(7, 0, 25) != replication_seed(7, 0, 50));
}

TEST_CASE("real fits are deterministic across thread counts") {
    StudyConfig cfg;
    cfg.sample_sizes = {25};
    cfg.replications = 6;
    cfg.methods = {StudyMethod::MLE, StudyMethod::CvM, StudyMethod::Bayes};
    cfg.restarts = 1;
    cfg.bayes.iterations = 3000;
    cfg.bayes.burn_in = 500;
    cfg.threads = 1;
    const auto a = run_study(cfg);
    cfg.threads = 3;
    const auto b = run_study(cfg);
    REQUIRE(a.cells.size() == b.cells.size());
    for (std::size_t i = 0; i < a.cells.size(); ++i) {
        CHECK(a.cells[i].rmse == b.cells[i].rmse);
        CHECK(a.cells[i].bias == b.cells[i].bias);
        CHECK(a.cells[i].failures == b.cells[i].failures);
        for (int j = 0; j < 4; ++j) {
            CHECK(a.cells[i].rmse[j] >= std::abs(a.cells[i].bias[j]));
            CHECK(std::isfinite(a.cells[i].rmse[j]));
        }
    }
}

TEST_CASE("study configuration is validated") {
    auto cfg = small_config();
    CHECK_NOTHROW(cfg.validate());
    cfg.replications = 1;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg = small_config();
    cfg.sample_sizes = {};
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg.sample_sizes = {9};
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg = small_config();
    cfg.methods = {};
    CHECK_THROWS_AS(cfg.validate(), DomainError);

    CHECK(parse_study_method("bayes") == StudyMethod::Bayes);
    CHECK(parse_study_method("CVM") == StudyMethod::CvM);
    CHECK(study_method_name(StudyMethod::WLS) == "WLS");
    CHECK_THROWS_AS(parse_study_method("lasso"), DomainError);
}

TEST_CASE("study CSV is long format") {
    const auto cfg = small_config();
    const auto rep = run_study(cfg, [&](StudyMethod, const Sample&, std::uint64_t, std::size_t) {
        return std::optional<HewParams>(cfg.truth);
    });
    std::ostringstream os;
    write_study_csv(rep, os);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "method,n,parameter,rmse,bias");
    std::size_t rows = 0;
    while (std::getline(is, line)) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 4);
    }
    CHECK(rows == 2 * 2 * 4);
    CHECK(os.str().find("MLE,10,theta,") != std::string::npos);
    CHECK(os.str().find("AD,20,alpha,") != std::string::npos);
}

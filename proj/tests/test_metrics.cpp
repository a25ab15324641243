#include "doctest.h"

#include "fairaudit/errors.hpp"
#include "fairaudit/fairness.hpp"
#include "fairaudit/metrics.hpp"
#include "oracles.hpp"

#include <random>

using namespace fairaudit;

TEST_SUITE("metrics") {

TEST_CASE("Wilson interval reference values")
{
    auto zero = wilson_ci(0, 10);
    CHECK(zero.value == 0.0);
    CHECK(zero.ci_low == 0.0);
    CHECK(zero.ci_high == doctest::Approx(0.2775).epsilon(1e-4));

    auto half = wilson_ci(50, 100);
    CHECK(half.ci_low == doctest::Approx(0.4038).epsilon(1e-4));
    CHECK(half.ci_high == doctest::Approx(0.5962).epsilon(1e-4));

    auto all = wilson_ci(10, 10);
    CHECK(all.ci_high == 1.0);
    CHECK_FALSE(wilson_ci(0, 0).defined);
    CHECK_THROWS_AS(wilson_ci(3, 2), ValidationError);
}

TEST_CASE("Wilson interval is symmetric under k -> n - k and matches the closed form")
{
    for (std::size_t n : {1u, 7u, 40u, 333u}) {
        for (std::size_t k = 0; k <= n; k += std::max<std::size_t>(1, n / 9)) {
            auto a = wilson_ci(k, n);
            auto b = wilson_ci(n - k, n);
            CHECK(a.ci_low == doctest::Approx(1.0 - b.ci_high).epsilon(1e-12));
            CHECK(a.ci_high == doctest::Approx(1.0 - b.ci_low).epsilon(1e-12));
            auto [lo, hi] = oracle::wilson(static_cast<double>(k), static_cast<double>(n));
            CHECK(std::fabs(a.ci_low - lo) < 1e-12);
            CHECK(std::fabs(a.ci_high - hi) < 1e-12);
        }
    }
}

TEST_CASE("other confidence levels use the matching normal quantile")
{
    auto w90 = wilson_ci(30, 100, 0.90);
    auto [lo, hi] = oracle::wilson(30, 100, 1.6448536269514722);
    CHECK(w90.ci_low == doctest::Approx(lo).epsilon(1e-10));
    CHECK(w90.ci_high == doctest::Approx(hi).epsilon(1e-10));
    CHECK_THROWS_AS(wilson_ci(3, 10, 1.5), ConfigError);
}

TEST_CASE("classify and count")
{
    std::vector<double> p = {0.1, 0.5, 0.49, 0.9};
    std::vector<std::uint8_t> y = {0, 1, 1, 0};
    auto pred = classify(p, PredictionKind::Probability, 0.5);
    CHECK(pred == std::vector<std::uint8_t>{0, 1, 0, 1});
    auto c = confusion_counts(pred, y);
    CHECK(c == ConfusionCounts{1, 1, 1, 1});

    std::vector<std::uint8_t> mask = {0, 0, 0, 0};
    CHECK_THROWS_AS(confusion_counts(pred, y, mask), EmptyGroupError);
    std::vector<double> bin = {0, 1, 1, 0};
    CHECK(classify(bin, PredictionKind::Binary, 0.99) == std::vector<std::uint8_t>{0, 1, 1, 0});
}

TEST_CASE("performance metrics on a hand-checked table")
{
    ConfusionCounts c{30, 10, 50, 10};
    auto m = performance_metrics(c, "g");
    CHECK(m.n == 100);
    CHECK(m.accuracy.value == doctest::Approx(0.8));
    CHECK(m.tpr.value == doctest::Approx(0.75));
    CHECK(m.fpr.value == doctest::Approx(10.0 / 60.0));
    CHECK(m.ppv.value == doctest::Approx(0.75));
    CHECK(m.npv.value == doctest::Approx(50.0 / 60.0));
    CHECK(m.ber.value == doctest::Approx((10.0 / 60.0 + 0.25) / 2));
    CHECK(m.nntp.value == doctest::Approx(40.0 / 30.0));
    CHECK(m.nntn.value == doctest::Approx(60.0 / 50.0));
    // NNTP bounds are the reciprocals of the PPV bounds.
    CHECK(m.nntp.ci_low == doctest::Approx(1.0 / m.ppv.ci_high));
    CHECK(m.nntp.ci_high == doctest::Approx(1.0 / m.ppv.ci_low));
    CHECK(m.ber.ci_low < m.ber.value);
    CHECK(m.ber.ci_high > m.ber.value);
}

TEST_CASE("zero denominators give undefined estimates")
{
    ConfusionCounts c{0, 0, 5, 0};
    auto m = performance_metrics(c);
    CHECK_FALSE(m.tpr.defined);
    CHECK_FALSE(m.ppv.defined);
    CHECK_FALSE(m.ber.defined);
    CHECK_FALSE(m.nntp.defined);
    CHECK(m.npv.value == 1.0);
    CHECK_FALSE(number_needed_positive(c).defined);
    CHECK(number_needed_negative(c).value == 1.0);
}

TEST_CASE("metrics equal a brute-force tally on random groups")
{
    std::mt19937_64 rng(99);
    for (int rep = 0; rep < 30; ++rep) {
        auto inst = oracle::random_instance(rng, 200, 4);
        const double t = 0.45;
        auto pred = classify(inst.pred, PredictionKind::Probability, t);
        for (std::size_t g = 0; g < 4; ++g) {
            std::vector<std::uint8_t> mask(inst.y.size());
            for (std::size_t i = 0; i < mask.size(); ++i)
                mask[i] = inst.group[i] == g;
            auto m = performance_metrics(confusion_counts(pred, inst.y, mask));
            auto o = oracle::tally(inst.pred, inst.y, t, inst.group, g);
            CHECK(static_cast<double>(m.counts.tp) == o.tp);
            CHECK(static_cast<double>(m.counts.fn) == o.fn);
            if (o.tp + o.fn > 0)
                CHECK(std::fabs(m.tpr.value - o.tp / (o.tp + o.fn)) < 1e-12);
            if (o.tp + o.fp > 0)
                CHECK(std::fabs(m.ppv.value - o.tp / (o.tp + o.fp)) < 1e-12);
        }
    }
}

}

TEST_SUITE("fairness") {

namespace {

GroupMetrics with_rates(std::string name, std::size_t n, double tpr, double fpr)
{
    GroupMetrics g;
    g.group = std::move(name);
    g.n = n;
    g.tpr = MetricEstimate::point(tpr);
    g.fpr = MetricEstimate::point(fpr);
    g.ber = MetricEstimate::point((fpr + 1.0 - tpr) / 2.0);
    return g;
}

} // namespace

TEST_CASE("differences against the reference and the BER identity")
{
    std::vector<GroupMetrics> groups = {with_rates("ref", 100, 0.6, 0.2), with_rates("a", 50, 0.7, 0.35),
                                        with_rates("b", 20, 0.4, 0.1)};
    auto table = fairness_table(groups, "ref");
    CHECK(table.reference == "ref");
    CHECK(table.reference_n == 100);
    REQUIRE(table.rows.size() == 2);
    CHECK(table.rows[0].group == "a");
    CHECK(*table.rows[0].tpr_delta == doctest::Approx(0.1));
    CHECK(*table.rows[0].fpr_delta == doctest::Approx(0.15));
    for (const auto& r : table.rows)
        CHECK(std::fabs(*r.ber_delta - (*r.fpr_delta - *r.tpr_delta) / 2.0) < 1e-12);
}

TEST_CASE("ratio mode and undefined reference values")
{
    std::vector<GroupMetrics> groups = {with_rates("ref", 10, 0.5, 0.0), with_rates("a", 10, 0.25, 0.1)};
    auto table = fairness_table(groups, "ref", DeltaMode::Ratio);
    CHECK(*table.rows[0].tpr_delta == doctest::Approx(0.5));
    CHECK_FALSE(table.rows[0].fpr_delta.has_value());

    groups[1].tpr = MetricEstimate::undefined();
    auto diff = fairness_table(groups, "ref");
    CHECK_FALSE(diff.rows[0].tpr_delta.has_value());
}

TEST_CASE("configuration errors")
{
    std::vector<GroupMetrics> one = {with_rates("ref", 10, 0.5, 0.1)};
    CHECK_THROWS_AS(fairness_table(one, "ref"), ConfigError);
    std::vector<GroupMetrics> two = {with_rates("ref", 10, 0.5, 0.1), with_rates("a", 5, 0.5, 0.1)};
    CHECK_THROWS_AS(fairness_table(two, "missing"), ConfigError);
    CHECK(parse_delta_mode("diff") == DeltaMode::Difference);
    CHECK(parse_delta_mode("ratio") == DeltaMode::Ratio);
    CHECK_THROWS_AS(parse_delta_mode("odds"), ConfigError);
}

TEST_CASE("disparity band")
{
    auto band = disparity_band("ppv", MetricEstimate::point(0.6));
    CHECK(band.defined);
    CHECK(band.low == doctest::Approx(0.48));
    CHECK(band.high == doctest::Approx(0.75));
    CHECK(disparity_band("tpr", MetricEstimate::point(0.0)).degenerate);
    CHECK_FALSE(disparity_band("tpr", MetricEstimate::undefined()).defined);
}

}

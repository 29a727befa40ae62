// Copyright 2026 The layercode Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "layercode/bench.h"

#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "layercode/fit.h"
#include "oracles.h"

using namespace layercode;
using namespace layercode::testing;

namespace {

ExperimentSpec small_threshold(std::vector<double> p, size_t trials) {
    ExperimentSpec s;
    s.kind = ExperimentKind::Threshold;
    s.n_grid = {5};
    s.p_grid = std::move(p);
    s.trials = trials;
    s.candidates = 200;
    s.kept = 4;
    s.seed = 3;
    return s;
}

ExperimentSpec small_memory() {
    ExperimentSpec s;
    s.kind = ExperimentKind::Memory;
    s.n_grid = {5};
    s.beta_grid = {1.5, 2.5};
    s.trials = 6;
    s.candidates = 200;
    s.kept = 3;
    s.seed = 4;
    return s;
}

// Noiseless memory grid built from the given laws.
std::vector<MemoryPoint> synthetic_grid() {
    std::vector<MemoryPoint> pts;
    for (double beta = 8; beta <= 12; beta += 1) {
        double n_star = std::exp(0.448 * beta - 0.562);
        double log_t_star = 0.695 * beta * beta - 7.11 * beta + 26.1;
        double slope = 1.732 * beta - 13.235;
        for (double f : {0.25, 0.5, 1.0}) {
            pts.push_back({n_star * f, beta, std::exp(log_t_star + slope * std::log(f)), 0});
        }
        pts.push_back({2 * n_star, beta, std::exp(log_t_star) / 2, 0});
    }
    return pts;
}

double rel(double got, double want) {
    return std::abs(got - want) / std::abs(want);
}

}  // namespace

TEST(Ensemble, postconditions) {
    Rng rng(91);
    Ensemble e = build_ensemble(7, 300, 10, rng);
    EXPECT_EQ(e.requested, 10u);
    EXPECT_EQ(e.kept.size(), std::min<size_t>(10, e.survivors));
    EXPECT_GT(e.survivors, 0u);
    for (size_t i = 0; i < e.kept.size(); i++) {
        const CssCode &c = e.kept[i].code;
        EXPECT_EQ(c.n(), 7u);
        EXPECT_EQ(c.hx.rows(), 3u);
        EXPECT_EQ(c.hz.rows(), 3u);
        EXPECT_EQ(c.k(), 1u);
        size_t dz = brute_min_logical_weight(c.hx, c.hz);
        size_t dx = brute_min_logical_weight(c.hz, c.hx);
        EXPECT_EQ(dx, dz);
        EXPECT_EQ(e.kept[i].distance, dz);
        if (i > 0) {
            EXPECT_GE(e.kept[i - 1].distance, e.kept[i].distance);
        }
    }
    auto j = nlohmann::json::parse(e.manifest_json());
    EXPECT_EQ(j["n"], 7);
    EXPECT_EQ(j["kept"].size(), e.kept.size());
}

TEST(Ensemble, shortfall_reported) {
    Rng rng(92);
    Ensemble e = build_ensemble(5, 10, 50, rng);
    EXPECT_EQ(e.shortfall(), 50 - e.kept.size());
}

TEST(ExperimentSpec, validation) {
    ExperimentSpec s = small_threshold({}, 10);
    EXPECT_THROW(s.validate(), std::invalid_argument);
    s = small_threshold({0.1}, 0);
    EXPECT_THROW(s.validate(), std::invalid_argument);
    s = small_threshold({0.1}, 5);
    EXPECT_NO_THROW(s.validate());
    EXPECT_EQ(nlohmann::json::parse(s.to_json())["decoder"], "cluster");
    EXPECT_EQ(parse_decoder("concat-modified"), DecoderKind::ConcatModified);
    EXPECT_THROW(parse_decoder("mwpm"), std::invalid_argument);
}

TEST(Threshold, no_noise_no_failures) {
    auto rows = threshold_experiment(small_threshold({0.0}, 30));
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].failures, 0u);
    EXPECT_EQ(rows[0].rate, 0.0);
}

TEST(Threshold, half_noise_mostly_fails) {
    auto rows = threshold_experiment(small_threshold({0.5}, 60));
    EXPECT_GT(rows[0].rate, 0.4);
    double se = std::sqrt(rows[0].rate * (1 - rows[0].rate) / 60);
    EXPECT_NEAR(rows[0].stderr_, se, 1e-12);
}

TEST(Threshold, concat_decoders_run) {
    for (DecoderKind d : {DecoderKind::Concat, DecoderKind::ConcatModified}) {
        ExperimentSpec s = small_threshold({0.0, 0.02}, 10);
        s.decoder = d;
        auto rows = threshold_experiment(s);
        EXPECT_EQ(rows[0].failures, 0u);
    }
}

TEST(Determinism, threshold_csv_independent_of_workers) {
    ExperimentSpec s = small_threshold({0.01, 0.03}, 40);
    std::ostringstream a, b;
    write_threshold_csv(a, threshold_experiment(s));
    s.workers = 8;
    write_threshold_csv(b, threshold_experiment(s));
    EXPECT_EQ(a.str(), b.str());
    EXPECT_EQ(a.str().substr(0, a.str().find('\n')), "n,p,trials,failures,rate,stderr");
}

TEST(Determinism, memory_csv_independent_of_workers) {
    ExperimentSpec s = small_memory();
    std::ostringstream a, b, ta, tb;
    MemoryResult r1 = memory_experiment(s);
    s.workers = 8;
    MemoryResult r8 = memory_experiment(s);
    write_memory_csv(a, r1.rows);
    write_memory_csv(b, r8.rows);
    write_trial_csv(ta, r1.trials);
    write_trial_csv(tb, r8.trials);
    EXPECT_EQ(a.str(), b.str());
    EXPECT_EQ(ta.str(), tb.str());
}

TEST(Memory, aggregate_recomputed) {
    MemoryResult r = memory_experiment(small_memory());
    ASSERT_EQ(r.rows.size(), 2u);
    for (const MemoryRow &row : r.rows) {
        std::vector<double> t;
        for (const MemoryTrial &x : r.trials) {
            if (x.n == row.n && x.beta == row.beta) {
                t.push_back(x.t_fail);
            }
        }
        ASSERT_EQ(t.size(), row.trials);
        double mean = 0, ss = 0;
        for (double v : t) {
            mean += v;
        }
        mean /= t.size();
        for (double v : t) {
            ss += (v - mean) * (v - mean);
        }
        EXPECT_NEAR(row.mean_tfail, mean, 1e-9 * mean);
        EXPECT_NEAR(row.sem, std::sqrt(ss / (t.size() - 1) / t.size()), 1e-9 * mean);
    }
}

TEST(Memory, aggregate_groups_in_order) {
    std::vector<MemoryTrial> t = {{0, 7, 2.0, 0, 4, false, 0, 0}, {0, 5, 1.0, 0, 1, false, 0, 0},
                                  {1, 7, 2.0, 0, 6, true, 0, 0},  {1, 5, 1.0, 0, 3, false, 0, 0}};
    auto rows = aggregate_memory(t);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].n, 7);
    EXPECT_DOUBLE_EQ(rows[0].mean_tfail, 5);
    EXPECT_DOUBLE_EQ(rows[0].sem, 1);
    EXPECT_EQ(rows[0].censored, 1u);
    EXPECT_DOUBLE_EQ(rows[0].mean_tfail_uncensored, 4);
    EXPECT_DOUBLE_EQ(rows[1].mean_tfail, 2);
}

TEST(Fit, line_and_quadratic_exact) {
    LinearFit l = fit_line({1, 2, 3, 4}, {5, 7, 9, 11});
    EXPECT_NEAR(l.slope, 2, 1e-12);
    EXPECT_NEAR(l.intercept, 3, 1e-12);
    EXPECT_NEAR(l.slope_se, 0, 1e-9);
    QuadraticFit q = fit_quadratic({0, 1, 2}, {1, 2, 5});
    EXPECT_NEAR(q.a, 1, 1e-12);
    EXPECT_NEAR(q.b, 0, 1e-12);
    EXPECT_NEAR(q.c, 1, 1e-12);
    EXPECT_THROW(fit_line({1}, {1}), std::invalid_argument);
    EXPECT_THROW(fit_line({1, 1}, {1, 2}), std::invalid_argument);
}

TEST(Fit, constant_data_has_zero_slope) {
    LinearFit l = fit_line({1, 2, 3, 4, 5}, {7, 7, 7, 7, 7});
    EXPECT_NEAR(l.slope, 0, 1e-12);
    EXPECT_NEAR(l.intercept, 7, 1e-12);
    // A flat memory curve puts n* at the smallest n.
    std::vector<MemoryPoint> pts;
    for (double beta : {1.0, 2.0, 3.0}) {
        for (double n : {5.0, 7.0, 9.0}) {
            pts.push_back({n, beta, 10, 0});
        }
    }
    FitReport r = fit_report(pts);
    for (const BetaFit &b : r.per_beta) {
        EXPECT_EQ(b.n_star, 5);
        EXPECT_FALSE(b.growth);
    }
}

TEST(Fit, noiseless_round_trip) {
    FitReport r = fit_report(synthetic_grid());
    ASSERT_EQ(r.per_beta.size(), 5u);
    EXPECT_LT(rel(r.log_nstar.slope, 0.448), 1e-6);
    EXPECT_LT(rel(r.log_nstar.intercept, -0.562), 1e-6);
    EXPECT_LT(rel(r.log_tstar.a, 0.695), 1e-6);
    EXPECT_LT(rel(r.log_tstar.b, -7.11), 1e-6);
    EXPECT_LT(rel(r.log_tstar.c, 26.1), 1e-6);
    ASSERT_TRUE(r.slope_law);
    EXPECT_LT(rel(r.slope_law->slope, 1.732), 1e-6);
    EXPECT_LT(rel(r.slope_law->intercept, -13.235), 1e-6);
    auto j = nlohmann::json::parse(r.to_json());
    EXPECT_EQ(j["per_beta"].size(), 5u);
}

TEST(Fit, csv_round_trip) {
    std::vector<MemoryRow> rows = {{5, 3, 15.5, 1.25, 40, 0, 15.5, 1.25}, {7, 3, 16, 2, 40, 1, 14, 2}};
    auto path = std::filesystem::temp_directory_path() / "layercode_memory_test.csv";
    {
        std::ofstream f(path);
        write_memory_csv(f, rows);
    }
    auto pts = read_memory_csv(path.string());
    ASSERT_EQ(pts.size(), 2u);
    EXPECT_EQ(pts[1].n, 7);
    EXPECT_EQ(pts[1].beta, 3);
    EXPECT_EQ(pts[1].mean_tfail, 16);
    EXPECT_EQ(pts[1].sem, 2);
    std::filesystem::remove(path);
}

TEST(Fit, curve_crossing_interpolates) {
    auto x = curve_crossing({0.01, 0.02, 0.03}, {0.1, 0.2, 0.3}, {0.05, 0.2, 0.4});
    ASSERT_TRUE(x);
    // The tie at 0.02 is skipped: interpolate between 0.01 and 0.03.
    EXPECT_NEAR(*x, 0.01 + 0.02 * 0.05 / 0.15, 1e-12);
    auto y = curve_crossing({1, 2}, {1, 1}, {0, 3});
    ASSERT_TRUE(y);
    EXPECT_NEAR(*y, 1 + 1.0 / 3, 1e-12);
    EXPECT_FALSE(curve_crossing({1, 2}, {1, 1}, {0, 0.5}));
}

TEST(ParallelFor, covers_range_and_rethrows) {
    std::vector<std::atomic<int>> hits(100);
    parallel_for(100, 4, [&](size_t i) { hits[i]++; });
    for (auto &h : hits) {
        EXPECT_EQ(h.load(), 1);
    }
    EXPECT_THROW(parallel_for(10, 3, [](size_t i) {
                     if (i == 7) {
                         throw std::runtime_error("boom");
                     }
                 }),
                 std::runtime_error);
}

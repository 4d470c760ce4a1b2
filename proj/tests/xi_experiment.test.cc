// Copyright 2026 The kzcrit Authors
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

#include "kzcrit/xi_experiment.h"

#include <cmath>

#include "gtest/gtest.h"

#include "kzcrit/error.h"
#include "kzcrit/observables.h"

using namespace kzcrit;

TEST(xi_experiment, correlation_observable_names) {
    const auto obs = correlation_observables(9, 4, 3);
    ASSERT_EQ(obs.size(), 3u);
    EXPECT_EQ(obs[0].name, "C1");
    EXPECT_EQ(obs[2].name, "C3");
    StateVector s(9);
    EXPECT_EQ(obs[1].evaluate(s), 1.0);
}

TEST(xi_experiment, zero_noise_ratios_are_one) {
    const KzSchedule s = KzSchedule::make(9, 1.0, 0.1, 2);
    const std::vector<double> ps = {0.0};
    const XiTable t = xi_experiment_p(s, ps, {0.0, 1, 20, true});
    EXPECT_EQ(t.grid_name, "p");
    ASSERT_EQ(t.rows.size(), 4u);
    for (const auto &row : t.rows) {
        if (!row.excluded) {
            EXPECT_EQ(row.ratio, 1.0);
            EXPECT_EQ(row.ratio_err, 0.0);
        }
    }
    EXPECT_EQ(t.gate_count, build_drive(s).gate_count());
}

TEST(xi_experiment, unit_depth_matches_unpadded) {
    const KzSchedule s = KzSchedule::make(7, 1.0, 0.1, 2);
    const std::vector<int> ds = {1};
    const XiTable t = xi_experiment_d(s, ds, {0.0, 1, 5, true});
    for (const auto &row : t.rows) {
        EXPECT_NEAR(row.ratio, 1.0, 1e-12) << row.x;
    }
    const std::vector<int> bad = {2};
    EXPECT_THROW(xi_experiment_d(s, bad, {0.0, 1, 5, true}), ArgumentError);
}

TEST(xi_experiment, noiseless_padding_keeps_ratios_at_one) {
    const KzSchedule s = KzSchedule::make(7, 1.0, 0.1, 2);
    const std::vector<int> ds = {1, 3};
    const XiTable t = xi_experiment_d(s, ds, {0.0, 1, 3, true});
    for (const auto &row : t.rows) {
        EXPECT_NEAR(row.ratio, 1.0, 1e-10) << row.grid_value << " " << row.x;
    }
}

TEST(xi_experiment, noise_makes_ratios_decay) {
    const KzSchedule s = KzSchedule::make(9, 2.0, 0.1, 2);
    const std::vector<double> ps = {0.0, 0.003};
    XiExperimentOptions o;
    o.cutoff = 1e-6;
    const XiTable t = xi_experiment_p(s, ps, {0.0, 5, 400, true}, o);
    const auto pts = t.ratios(0.003);
    ASSERT_GE(pts.size(), 3u);
    const NoiseLengthFit f = extract_xi(pts, 1, 4);
    EXPECT_LT(f.slope, 0.0);
    EXPECT_FALSE(f.no_decay);
}

TEST(xi_experiment, cutoff_excludes_small_references) {
    const KzSchedule s = KzSchedule::make(9, 1.0, 0.1, 2);
    const std::vector<double> ps = {0.0};
    XiExperimentOptions o;
    o.cutoff = 10.0;  // above any |C|
    const XiTable t = xi_experiment_p(s, ps, {0.0, 1, 2, true}, o);
    for (const auto &row : t.rows) {
        EXPECT_TRUE(row.excluded);
    }
    EXPECT_TRUE(t.ratios(0.0).empty());
}

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

#ifndef LAYERCODE_FIT_H
#define LAYERCODE_FIT_H

#include <optional>
#include <string>
#include <vector>

namespace layercode {

/// y = slope x + intercept.
struct LinearFit {
    double slope = 0, intercept = 0;
    double slope_se = 0, intercept_se = 0;
    size_t points = 0;
};

/// y = a x^2 + b x + c.
struct QuadraticFit {
    double a = 0, b = 0, c = 0;
    double a_se = 0, b_se = 0, c_se = 0;
    size_t points = 0;
};

/// Ordinary least squares. Standard errors are zero when the fit is exactly
/// determined. Throws on fewer points than parameters or a singular design.
LinearFit fit_line(const std::vector<double> &x, const std::vector<double> &y);
QuadraticFit fit_quadratic(const std::vector<double> &x, const std::vector<double> &y);

/// One aggregated memory-time point.
struct MemoryPoint {
    double n = 0;
    double beta = 0;
    double mean_tfail = 0;
    double sem = 0;
};

struct BetaFit {
    double beta = 0;
    /// log<t_fail> = slope log n + intercept, over grid points with n <= n*.
    /// Absent when fewer than two such points exist.
    std::optional<LinearFit> growth;
    double n_star = 0;
    double t_star = 0;
};

struct FitReport {
    std::vector<BetaFit> per_beta;
    LinearFit log_nstar;       // log n* vs beta
    QuadraticFit log_tstar;    // log t* vs beta
    std::optional<LinearFit> slope_law;  // growth slope vs beta

    std::string to_json() const;
};

/// Needs at least three distinct beta values. n* is the grid argmax of
/// <t_fail>, with ties going to the smaller n.
FitReport fit_report(const std::vector<MemoryPoint> &points);

/// Reads the aggregate memory CSV written by the bench.
std::vector<MemoryPoint> read_memory_csv(const std::string &path);

/// Abscissa where the failure curve of the larger code first rises from
/// below to above the smaller one, by linear interpolation. Points where
/// both curves coincide are skipped.
std::optional<double> curve_crossing(const std::vector<double> &x, const std::vector<double> &small,
                                     const std::vector<double> &large);

}  // namespace layercode

#endif

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

#include "layercode/fit.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace layercode {

namespace {

// Least squares on a design matrix; returns coefficients and standard errors.
std::pair<Eigen::VectorXd, Eigen::VectorXd> least_squares(const Eigen::MatrixXd &A, const Eigen::VectorXd &y) {
    const auto m = A.rows(), p = A.cols();
    if (m < p) {
        throw std::invalid_argument("fit: fewer points than parameters");
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    if (qr.rank() < p) {
        throw std::invalid_argument("fit: degenerate abscissae");
    }
    Eigen::VectorXd coef = qr.solve(y);
    Eigen::VectorXd se = Eigen::VectorXd::Zero(p);
    if (m > p) {
        double rss = (A * coef - y).squaredNorm();
        double s2 = rss / (double)(m - p);
        Eigen::MatrixXd cov = (A.transpose() * A).inverse() * s2;
        for (Eigen::Index i = 0; i < p; i++) {
            se[i] = std::sqrt(std::max(0.0, cov(i, i)));
        }
    }
    return {coef, se};
}

void check_sizes(const std::vector<double> &x, const std::vector<double> &y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("fit: x and y differ in length");
    }
}

nlohmann::json linear_json(const LinearFit &f) {
    return {{"slope", f.slope},
            {"intercept", f.intercept},
            {"slope_se", f.slope_se},
            {"intercept_se", f.intercept_se},
            {"points", f.points}};
}

}  // namespace

LinearFit fit_line(const std::vector<double> &x, const std::vector<double> &y) {
    check_sizes(x, y);
    Eigen::MatrixXd A(x.size(), 2);
    Eigen::VectorXd b(y.size());
    for (size_t i = 0; i < x.size(); i++) {
        A(i, 0) = x[i];
        A(i, 1) = 1;
        b[i] = y[i];
    }
    auto [coef, se] = least_squares(A, b);
    return {coef[0], coef[1], se[0], se[1], x.size()};
}

QuadraticFit fit_quadratic(const std::vector<double> &x, const std::vector<double> &y) {
    check_sizes(x, y);
    Eigen::MatrixXd A(x.size(), 3);
    Eigen::VectorXd b(y.size());
    for (size_t i = 0; i < x.size(); i++) {
        A(i, 0) = x[i] * x[i];
        A(i, 1) = x[i];
        A(i, 2) = 1;
        b[i] = y[i];
    }
    auto [coef, se] = least_squares(A, b);
    return {coef[0], coef[1], coef[2], se[0], se[1], se[2], x.size()};
}

FitReport fit_report(const std::vector<MemoryPoint> &points) {
    std::map<double, std::vector<MemoryPoint>> by_beta;
    for (const MemoryPoint &p : points) {
        if (!(p.mean_tfail > 0) || !(p.n > 0)) {
            throw std::invalid_argument("fit_report: n and <t_fail> must be positive");
        }
        by_beta[p.beta].push_back(p);
    }
    if (by_beta.size() < 3) {
        throw std::invalid_argument("fit_report: need at least three beta values");
    }
    FitReport report;
    std::vector<double> betas, log_n, log_t, slope_beta, slopes;
    for (auto &[beta, pts] : by_beta) {
        std::stable_sort(pts.begin(), pts.end(), [](const MemoryPoint &a, const MemoryPoint &b) {
            return a.n < b.n;
        });
        size_t star = 0;
        for (size_t i = 1; i < pts.size(); i++) {
            if (pts[i].mean_tfail > pts[star].mean_tfail) {
                star = i;
            }
        }
        BetaFit bf;
        bf.beta = beta;
        bf.n_star = pts[star].n;
        bf.t_star = pts[star].mean_tfail;
        if (star >= 1) {
            std::vector<double> x, y;
            for (size_t i = 0; i <= star; i++) {
                x.push_back(std::log(pts[i].n));
                y.push_back(std::log(pts[i].mean_tfail));
            }
            bf.growth = fit_line(x, y);
            slope_beta.push_back(beta);
            slopes.push_back(bf.growth->slope);
        }
        betas.push_back(beta);
        log_n.push_back(std::log(bf.n_star));
        log_t.push_back(std::log(bf.t_star));
        report.per_beta.push_back(bf);
    }
    report.log_nstar = fit_line(betas, log_n);
    report.log_tstar = fit_quadratic(betas, log_t);
    if (slopes.size() >= 2) {
        report.slope_law = fit_line(slope_beta, slopes);
    }
    return report;
}

std::string FitReport::to_json() const {
    nlohmann::json j;
    j["per_beta"] = nlohmann::json::array();
    for (const BetaFit &b : per_beta) {
        nlohmann::json e = {{"beta", b.beta}, {"n_star", b.n_star}, {"t_star", b.t_star}};
        e["growth"] = b.growth ? linear_json(*b.growth) : nlohmann::json();
        j["per_beta"].push_back(e);
    }
    j["log_nstar_vs_beta"] = linear_json(log_nstar);
    j["log_tstar_vs_beta"] = {{"a", log_tstar.a},         {"b", log_tstar.b},
                              {"c", log_tstar.c},         {"a_se", log_tstar.a_se},
                              {"b_se", log_tstar.b_se},   {"c_se", log_tstar.c_se},
                              {"points", log_tstar.points}};
    j["slope_law"] = slope_law ? linear_json(*slope_law) : nlohmann::json();
    return j.dump(2);
}

std::vector<MemoryPoint> read_memory_csv(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("read_memory_csv: cannot open " + path);
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("read_memory_csv: empty file");
    }
    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            header.push_back(cell);
        }
    }
    auto col = [&](const std::string &name) {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            throw std::runtime_error("read_memory_csv: missing column " + name);
        }
        return (size_t)(it - header.begin());
    };
    const size_t cn = col("n"), cb = col("beta"), ct = col("mean_tfail"), cs = col("sem");
    std::vector<MemoryPoint> out;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            cells.push_back(cell);
        }
        if (cells.size() != header.size()) {
            throw std::runtime_error("read_memory_csv: ragged row");
        }
        out.push_back({std::stod(cells[cn]), std::stod(cells[cb]), std::stod(cells[ct]), std::stod(cells[cs])});
    }
    return out;
}

std::optional<double> curve_crossing(const std::vector<double> &x, const std::vector<double> &small,
                                     const std::vector<double> &large) {
    if (x.size() != small.size() || x.size() != large.size()) {
        throw std::invalid_argument("curve_crossing: length mismatch");
    }
    std::optional<size_t> prev;
    for (size_t i = 0; i < x.size(); i++) {
        double d = large[i] - small[i];
        if (d == 0) {
            continue;
        }
        if (prev) {
            double d0 = large[*prev] - small[*prev];
            if (d0 < 0 && d > 0) {
                return x[*prev] + (x[i] - x[*prev]) * (-d0) / (d - d0);
            }
        }
        prev = i;
    }
    return std::nullopt;
}

}  // namespace layercode

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

// Acceptance run: prints one PASS/FAIL line per criterion and exits nonzero
// if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include "layercode/bench.h"
#include "layercode/cluster_decoder.h"
#include "layercode/concat_decoder.h"
#include "layercode/fit.h"
#include "layercode/matching.h"
#include "layercode/thermal.h"
#include "oracles.h"

using namespace layercode;
using namespace layercode::testing;

namespace {

// Pinned tolerances and targets.
constexpr size_t kConstructionInputs = 200;
constexpr double kConstructionSeconds = 120;
constexpr size_t kMaxCheckWeight = 6;
constexpr double kClusterSeconds = 600;
constexpr double kConcatSeconds = 600;
constexpr size_t kMatchingProblems = 1000;
constexpr size_t kMatchingMaxExcitations = 10;
constexpr size_t kThresholdTrials = 2000;
constexpr double kThresholdLow = 0.012, kThresholdHigh = 0.026;
constexpr double kDetailedBalanceRelTol = 1e-12;
constexpr uint64_t kGibbsSteps = 10000000;
constexpr double kGibbsMinP = 0.01;
constexpr uint64_t kBookkeepingFlips = 1000000;
constexpr size_t kMemoryTrials = 40;
constexpr double kMemorySigmas = 2;
constexpr double kFitRelTol = 5e-7;  // 6 significant digits
constexpr size_t kBarrierMaxN = 8;

int failures = 0;

void report(bool pass, const std::string &name, const std::string &detail) {
    std::printf("[%s] %s: %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    std::fflush(stdout);
    failures += !pass;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char *f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

CssCode c422_input() {
    return CssCode(BitMatrix::from_strings({"1111"}), BitMatrix::from_strings({"1111"}));
}

void construction() {
    auto t0 = std::chrono::steady_clock::now();
    Rng rng(1001);
    size_t bad_commute = 0, bad_weight = 0, bad_k = 0;
    for (size_t i = 0; i < kConstructionInputs; i++) {
        size_t n = 5 + i % 11;
        size_t m = (n - 1) / 2;
        CssCode c = sample_css(n, m, m, rng);
        Variant v = i % 2 ? Variant::Extended : Variant::OriginalTermination;
        int K = 1 + (int)(i / 2) % 2;
        LayerCode L = build(c, K, v);
        bad_commute += !L.hx_matrix().multiply(L.hz_matrix().transposed()).is_zero();
        bad_weight += L.max_check_weight() > kMaxCheckWeight;
        bad_k += L.k() != c.k();
    }
    double s = seconds_since(t0);
    report(bad_commute + bad_weight + bad_k == 0 && s < kConstructionSeconds, "construction",
           fmt("%zu inputs, commutation violations %zu, weight>6 %zu, k mismatches %zu, %.1fs", kConstructionInputs,
               bad_commute, bad_weight, bad_k, s));
}

void cluster_exhaustive() {
    auto t0 = std::chrono::steady_clock::now();
    LayerCode L = build(c422_input(), 1, Variant::OriginalTermination);
    DecodingHypergraph g = build_hypergraph(L);
    BitMatrix hx = L.hx_matrix();
    auto logicals = logical_basis(L).z;
    size_t N = L.num_qubits(), invalid = 0, unexplained = 0, single_ok = 0, double_fail = 0, doubles = 0;
    auto run = [&](const BitVector &e) {
        BitVector syn = L.z_syndrome(e);
        BitVector c = cluster_decode(g, syn);
        if (L.z_syndrome(c) != syn) {
            invalid++;
            return false;
        }
        BitVector r = e ^ c;
        if (in_rowspace(hx, r)) {
            return true;
        }
        bool logical = false;
        for (const auto &z : logicals) {
            logical |= r.dot(z);
        }
        unexplained += !logical;
        return false;
    };
    for (uint32_t q = 0; q < N; q++) {
        single_ok += run(BitVector::from_support(N, {q}));
    }
    for (uint32_t a = 0; a < N; a++) {
        for (uint32_t b = a + 1; b < N; b++) {
            doubles++;
            double_fail += !run(BitVector::from_support(N, {a, b}));
        }
    }
    double s = seconds_since(t0);
    report(invalid == 0 && unexplained == 0 && single_ok == N && s < kClusterSeconds, "cluster_exhaustive",
           fmt("%zu qubits, singles corrected %zu/%zu, doubles with logical failure %zu/%zu, validity violations "
               "%zu, unexplained residuals %zu, %.1fs",
               N, single_ok, N, double_fail, doubles, invalid, unexplained, s));
}

void concat_exhaustive() {
    auto t0 = std::chrono::steady_clock::now();
    LayerCode L = build(CssCode::steane(), 1, Variant::OriginalTermination);
    InputDecoder dec(L.input, InputDecoder::Kind::MinWeight);
    BitMatrix hz = L.hz_matrix();
    size_t N = L.num_qubits(), corrected = 0, stage_violations = 0;
    for (uint32_t q = 0; q < N; q++) {
        BitVector e = BitVector::from_support(N, {q});
        StageReport rep;
        BitVector c = concat_decode(L, L.x_syndrome(e), dec, PauliType::Z, &rep);
        stage_violations += !(rep.first_family_clear && rep.second_family_clear && rep.last_family_even);
        corrected += in_rowspace(hz, e ^ c);
    }
    double s = seconds_since(t0);
    report(corrected == N && stage_violations == 0 && s < kConcatSeconds, "concat_exhaustive",
           fmt("Steane layer code, %zu qubits, corrected %zu/%zu, stage invariant violations %zu, %.1fs", N,
               corrected, N, stage_violations, s));
}

void matching_oracle() {
    Rng rng(1004);
    const BoundarySet sets[] = {BoundarySet::all(),      BoundarySet::none(),       BoundarySet::top_bottom(),
                                BoundarySet::top_only(), BoundarySet::left_right(), BoundarySet::right_only()};
    size_t mismatches = 0;
    for (size_t t = 0; t < kMatchingProblems; t++) {
        MatchingProblem p;
        p.nu = 2 + (int)(rng() % 10);
        p.nv = 2 + (int)(rng() % 10);
        p.boundaries = sets[t % 6];
        size_t m = rng() % (kMatchingMaxExcitations + 1);
        if (!p.boundaries.any() && m % 2) {
            m--;
        }
        for (size_t i = 0; i < m; i++) {
            p.excitations.push_back({(int)(rng() % p.nu), (int)(rng() % p.nv)});
        }
        mismatches += mwpm(p).total_weight != brute_matching_weight(p);
    }
    report(mismatches == 0, "mwpm_oracle",
           fmt("%zu problems with up to %zu excitations, mismatches %zu", kMatchingProblems, kMatchingMaxExcitations,
               mismatches));
}

void threshold() {
    auto t0 = std::chrono::steady_clock::now();
    ExperimentSpec s;
    s.kind = ExperimentKind::Threshold;
    s.n_grid = {5, 7};
    s.p_grid = {0.005, 0.01, 0.015, 0.02, 0.025, 0.03, 0.035, 0.04};
    s.trials = kThresholdTrials;
    s.seed = 1;
    auto rows = threshold_experiment(s);
    std::vector<double> small, large;
    std::string curve;
    for (const ThresholdRow &r : rows) {
        (r.n == 5 ? small : large).push_back(r.rate);
    }
    for (size_t i = 0; i < s.p_grid.size(); i++) {
        curve += fmt(" p=%.3f:%.4f/%.4f", s.p_grid[i], small[i], large[i]);
    }
    auto x = curve_crossing(s.p_grid, small, large);
    bool pass = x && *x >= kThresholdLow && *x <= kThresholdHigh;
    report(pass, "threshold",
           (x ? fmt("crossing p=%.4f", *x) : std::string("no crossing in grid")) +
               fmt(" (target [%.3f, %.3f]); rates n=5/n=7%s; %.1fs", kThresholdLow, kThresholdHigh, curve.c_str(),
                   seconds_since(t0)));
}

void thermal() {
    // (a) Detailed balance over the whole rate table.
    double worst = 0;
    for (double beta : {0.1, 1.0, 3.0, 6.0, 10.0}) {
        SpinSystem s(6, {{0, 1, 2}, {2, 3}, {3, 4, 5}, {0, 5}, {1, 4}, {2, 3, 4, 5}}, beta);
        for (int de = -2 * s.max_degree(); de <= 2 * s.max_degree(); de++) {
            double err = std::abs(s.rate(de) / s.rate(-de) / std::exp(-beta * de) - 1);
            worst = std::max(worst, err);
        }
    }
    bool a = worst <= kDetailedBalanceRelTol;

    // (b) 12-spin toy system against the exact Gibbs law.
    std::vector<std::vector<uint32_t>> toy;
    for (uint32_t i = 0; i < 12; i++) {
        toy.push_back({i, (i + 1) % 12});
    }
    toy.push_back({0, 4, 8});
    toy.push_back({1, 5, 9});
    toy.push_back({3});
    GibbsCheck g = gibbs_check(12, toy, 1.0, kGibbsSteps, 1006);
    bool b = g.p_value > kGibbsMinP;

    // (c) Incremental bookkeeping against recomputation after every flip.
    LayerCode L = build(c422_input(), 1, Variant::OriginalTermination);
    SpinSystem sys(L.num_qubits(), L.checks_z, 1.0);
    Rng rng(1007);
    uint64_t mismatch = 0;
    for (uint64_t t = 0; t < kBookkeepingFlips; t++) {
        sys.nfold_step(rng);
        mismatch += !sys.consistent();
    }
    bool c = mismatch == 0;
    report(a && b && c, "thermal",
           fmt("(a) max detailed-balance rel error %.2e; (b) chi2=%.2f dof=%d p=%.4f over %llu samples; (c) %llu "
               "bookkeeping mismatches in %llu flips",
               worst, g.chi2, g.dof, g.p_value, (unsigned long long)g.samples, (unsigned long long)mismatch,
               (unsigned long long)kBookkeepingFlips));
}

void memory() {
    auto t0 = std::chrono::steady_clock::now();
    ExperimentSpec s;
    s.kind = ExperimentKind::Memory;
    s.n_grid = {5, 7, 9};
    s.beta_grid = {4, 5, 6, 7};
    s.trials = kMemoryTrials;
    s.seed = 1;
    MemoryResult r = memory_experiment(s);
    auto row = [&](int n, double beta) {
        for (const MemoryRow &m : r.rows) {
            if (m.n == n && m.beta == beta) {
                return m;
            }
        }
        throw std::logic_error("missing memory row");
    };

    bool increasing = true;
    std::string detail;
    for (int n : s.n_grid) {
        MemoryRow lo = row(n, 4), hi = row(n, 5);
        double gap = hi.mean_tfail - lo.mean_tfail;
        double sem = std::sqrt(lo.sem * lo.sem + hi.sem * hi.sem);
        increasing &= gap > kMemorySigmas * sem;
        detail += fmt(" n=%d: %.1f->%.1f (%.1f SEM);", n, lo.mean_tfail, hi.mean_tfail, gap / sem);
    }

    FitReport synth;
    {
        std::vector<MemoryPoint> pts;
        for (double beta = 8; beta <= 12; beta += 1) {
            double n_star = std::exp(0.448 * beta - 0.562);
            double log_t = 0.695 * beta * beta - 7.11 * beta + 26.1;
            double slope = 1.732 * beta - 13.235;
            for (double f : {0.25, 0.5, 1.0}) {
                pts.push_back({n_star * f, beta, std::exp(log_t + slope * std::log(f)), 0});
            }
            pts.push_back({2 * n_star, beta, std::exp(log_t) / 2, 0});
        }
        synth = fit_report(pts);
    }
    auto close = [](double got, double want) {
        return std::abs(got - want) <= kFitRelTol * std::abs(want);
    };
    bool round_trip = close(synth.log_tstar.a, 0.695) && close(synth.log_tstar.b, -7.11) &&
                      close(synth.log_tstar.c, 26.1) && close(synth.log_nstar.slope, 0.448) &&
                      close(synth.log_nstar.intercept, -0.562) && synth.slope_law &&
                      close(synth.slope_law->slope, 1.732) && close(synth.slope_law->intercept, -13.235);

    std::vector<MemoryPoint> pts;
    for (const MemoryRow &m : r.rows) {
        pts.push_back({(double)m.n, m.beta, m.mean_tfail, m.sem});
    }
    FitReport real = fit_report(pts);
    size_t with_growth = 0;
    bool positive = true;
    std::string slopes;
    for (const BetaFit &b : real.per_beta) {
        slopes += fmt(" beta=%g n*=%g", b.beta, b.n_star);
        if (b.growth) {
            with_growth++;
            positive &= b.growth->slope > 0;
            slopes += fmt(" slope=%.3f", b.growth->slope);
        }
        slopes += ";";
    }
    positive &= with_growth > 0;

    report(increasing && round_trip && positive, "memory",
           fmt("beta 4->5 increase beyond %.0f SEM:", kMemorySigmas) + detail +
               fmt(" fit round trip %s; real-data growth%s %.1fs", round_trip ? "exact to 6 digits" : "off",
                   slopes.c_str(), seconds_since(t0)));
}

void energy_barrier() {
    Rng rng(1008);
    size_t checked = 0, mismatches = 0, zero_barrier = 0, unexplained_zero = 0, missed_zero = 0;
    std::vector<CssCode> codes = {c422_input(), CssCode::steane()};
    for (size_t n = 3; n <= kBarrierMaxN; n++) {
        for (size_t mx = 1; 2 * mx < n; mx++) {
            for (size_t mz = 1; 2 * mz < n; mz++) {
                for (int t = 0; t < 25; t++) {
                    codes.push_back(sample_css(n, mx, mz, rng));
                }
            }
        }
    }
    for (const CssCode &c : codes) {
        if (c.k() == 0) {
            continue;
        }
        for (PauliType type : {PauliType::X, PauliType::Z}) {
            size_t b = energy_barrier_bruteforce(c, type);
            const BitMatrix &checks = type == PauliType::Z ? c.hx : c.hz;
            const BitMatrix &stabs = type == PauliType::Z ? c.hz : c.hx;
            mismatches += b != threshold_path_barrier(checks, stabs);
            // Delta = 0 exactly when a logical sits on qubits no check touches.
            bool uncovered = uncovered_logical_exists(checks, stabs);
            zero_barrier += b == 0;
            unexplained_zero += b == 0 && !uncovered;
            missed_zero += b != 0 && uncovered;
            checked++;
        }
    }
    report(mismatches == 0 && unexplained_zero == 0 && missed_zero == 0, "energy_barrier",
           fmt("%zu (code, type) pairs with n<=%zu and k>=1, path-search mismatches %zu; Delta=0 in %zu pairs, all "
               "with a logical on unchecked qubits: %s",
               checked, kBarrierMaxN, mismatches, zero_barrier,
               unexplained_zero + missed_zero == 0 ? "yes" : "no"));
}

void determinism() {
    ExperimentSpec t;
    t.kind = ExperimentKind::Threshold;
    t.n_grid = {5, 7};
    t.p_grid = {0.01, 0.03};
    t.trials = 200;
    t.seed = 9;
    ExperimentSpec m;
    m.kind = ExperimentKind::Memory;
    m.n_grid = {5};
    m.beta_grid = {2, 3};
    m.trials = 16;
    m.seed = 9;
    std::string csv[2][3];
    for (int i = 0; i < 2; i++) {
        t.workers = m.workers = i == 0 ? 1 : 8;
        std::ostringstream a, b, c;
        write_threshold_csv(a, threshold_experiment(t));
        MemoryResult r = memory_experiment(m);
        write_memory_csv(b, r.rows);
        write_trial_csv(c, r.trials);
        csv[i][0] = a.str();
        csv[i][1] = b.str();
        csv[i][2] = c.str();
    }
    bool same = csv[0][0] == csv[1][0] && csv[0][1] == csv[1][1] && csv[0][2] == csv[1][2];
    report(same, "determinism",
           fmt("threshold, memory and trial CSVs with 1 vs 8 workers are %s", same ? "byte-identical" : "different"));
}

}  // namespace

int main() {
    construction();
    cluster_exhaustive();
    concat_exhaustive();
    matching_oracle();
    threshold();
    thermal();
    memory();
    energy_barrier();
    determinism();
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}

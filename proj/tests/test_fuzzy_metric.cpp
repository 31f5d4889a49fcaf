/*
 * Copyright 2026 The ffp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "ffp/contraction.hpp"
#include "ffp/fuzzy_metric.hpp"
#include "oracles.hpp"

using namespace ffp;

namespace {

Vector vec1(double x) { return Vector::Constant(1, x); }

FuzzyMetric standard_line() { return standard_from_metric(PointSpace::euclidean(1)); }

std::vector<Vector> harmonic_prefix(int terms) {
    std::vector<Vector> seq;
    double acc = 0;
    for (int k = 1; k <= terms; ++k) {
        acc += 1.0 / k;
        seq.push_back(vec1(acc));
    }
    return seq;
}

}  // namespace

TEST_CASE("standard construction values on the line") {
    const FuzzyMetric fm = standard_line();
    CHECK(fm.eval(vec1(3.0), vec1(3.0), 5.0) == 1.0);
    CHECK(fm.eval(vec1(0.0), vec1(1.0), 1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(fm.eval(vec1(0.0), vec1(2.0), 1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(fm.standard_construction());
    CHECK(fm.tnorm().kind() == TNormKind::Product);
}

TEST_CASE("eval rejects non-positive scales") {
    const FuzzyMetric fm = standard_line();
    CHECK_THROWS_AS(fm.eval(vec1(0), vec1(1), 0.0), std::domain_error);
    CHECK_THROWS_AS(fm.eval(vec1(0), vec1(1), -1.0), std::domain_error);
}

TEST_CASE("standard construction needs a base metric") {
    PointSpace bare;
    bare.dimension = 2;
    CHECK_THROWS_AS(standard_from_metric(bare), std::invalid_argument);
}

TEST_CASE("euclidean base metric satisfies the metric axioms on samples") {
    const PointSpace space = PointSpace::euclidean(3);
    Rng rng(61);
    const SampleBox box = SampleBox::centered(3);
    for (int i = 0; i < 500; ++i) {
        const Vector u = box.sample(rng);
        const Vector v = box.sample(rng);
        const Vector z = box.sample(rng);
        CHECK(space.distance(u, u) == 0.0);
        CHECK(space.distance(u, v) == space.distance(v, u));
        CHECK(space.distance(u, z) <= space.distance(u, v) + space.distance(v, z) + 1e-12);
        CHECK(space.distance(u, v) >= 0.0);
    }
}

TEST_CASE("symmetry holds exactly on random pairs") {
    const FuzzyMetric fm = standard_from_metric(PointSpace::euclidean(3));
    Rng rng(7);
    const SampleBox box = SampleBox::centered(3);
    for (int i = 0; i < 200; ++i) {
        const Vector u = box.sample(rng);
        const Vector v = box.sample(rng);
        for (double rho : {0.1, 1.0, 10.0}) {
            CHECK(fm.eval(u, v, rho) == fm.eval(v, u, rho));
        }
    }
}

TEST_CASE("axiom check passes the standard metric with the product t-norm") {
    const FuzzyMetric fm = standard_from_metric(PointSpace::euclidean(2));
    const auto grid = default_rho_grid();
    const auto report = check_fm_axioms(fm, 10000, grid, 42);
    CHECK(report.all_passed());
    CHECK(report.axioms.size() == 5);
}

TEST_CASE("axiom check passes on a one-point sampling region") {
    const FuzzyMetric fm = standard_line();
    SampleBox degenerate;
    degenerate.lo = vec1(3.0);
    degenerate.hi = vec1(3.0);
    const auto grid = default_rho_grid();
    const auto report = check_fm_axioms(fm, 100, grid, 1, degenerate);
    CHECK(report.all_passed());
}

TEST_CASE("axiom check flags a capped evaluator at identity, with witness u=v") {
    const PointSpace space = PointSpace::euclidean(1);
    const FuzzyMetric broken = FuzzyMetric::custom(
        space, TNorm::product(), [](const Vector& u, const Vector& v, double rho) {
            return std::min(rho / (rho + (u - v).norm()), 0.9);
        });
    const auto grid = default_rho_grid();
    const auto report = check_fm_axioms(broken, 100, grid, 3);
    CHECK_FALSE(report.all_passed());
    const auto* identity = report.find("identity");
    REQUIRE(identity != nullptr);
    CHECK_FALSE(identity->passed);
    REQUIRE(identity->counterexample.has_value());
    CHECK(exactly_equal(identity->counterexample->u, identity->counterexample->v));
}

TEST_CASE("axiom check reports are reproducible for a fixed seed") {
    const PointSpace space = PointSpace::euclidean(2);
    const FuzzyMetric broken = FuzzyMetric::custom(
        space, TNorm::product(), [](const Vector& u, const Vector& v, double rho) {
            return std::min(rho / (rho + (u - v).norm()), 0.97);
        });
    const auto grid = default_rho_grid();
    const auto a = check_fm_axioms(broken, 500, grid, 99);
    const auto b = check_fm_axioms(broken, 500, grid, 99);
    const auto* ca = a.find("identity");
    const auto* cb = b.find("identity");
    REQUIRE(ca->counterexample.has_value());
    REQUIRE(cb->counterexample.has_value());
    CHECK(exactly_equal(ca->counterexample->u, cb->counterexample->u));
    CHECK(ca->counterexample->rho == cb->counterexample->rho);
    CHECK(ca->counterexample->sample_index == cb->counterexample->sample_index);
}

TEST_CASE("standard metric grows with the scale and tends to 1") {
    const FuzzyMetric fm = standard_from_metric(PointSpace::euclidean(2));
    Rng rng(11);
    const SampleBox box = SampleBox::centered(2);
    for (int i = 0; i < 100; ++i) {
        const Vector u = box.sample(rng);
        const Vector v = box.sample(rng);
        const double d = (u - v).norm();
        if (d == 0) continue;
        double prev = 0;
        for (double rho : {0.01, 0.1, 1.0, 10.0, 100.0}) {
            const double cur = fm.eval(u, v, rho);
            CHECK(cur > prev);
            prev = cur;
        }
        CHECK(fm.eval(u, v, 1e6) >= 1.0 - d / 1e6 - 1e-15);
    }
}

TEST_CASE("joint continuity: small input perturbations move the value little") {
    const FuzzyMetric fm = standard_from_metric(PointSpace::euclidean(2));
    Rng rng(13);
    const SampleBox box = SampleBox::centered(2);
    const double h = 1e-6;
    for (int i = 0; i < 100; ++i) {
        const Vector u = box.sample(rng);
        const Vector v = box.sample(rng);
        for (double rho : {0.5, 1.0, 5.0}) {
            const double base = fm.eval(u, v, rho);
            Vector du = u;
            du[0] += h;
            const double moved = fm.eval(du, v, rho + h);
            // d/(rho+d)^2 and rho/(rho+d)^2 are both bounded by 1/rho here
            CHECK(std::abs(moved - base) <= 3 * h / rho + 1e-12);
        }
    }
}

TEST_CASE("constant sequences certify both tail conditions at N=0") {
    const FuzzyMetric fm = standard_line();
    const std::vector<Vector> seq(50, vec1(2.5));
    const auto verdict = classify_sequence(fm, seq, 0.05, 1.0, 5);
    CHECK(verdict.cauchy.certified);
    CHECK(verdict.cauchy.onset == 0);
    CHECK(verdict.g_cauchy.certified);
    CHECK(verdict.g_cauchy.onset == 0);
    CHECK(verdict.classification == SequenceClass::Cauchy);
}

TEST_CASE("linear drift fails both tail conditions") {
    const FuzzyMetric fm = standard_line();
    std::vector<Vector> seq;
    for (int n = 0; n < 200; ++n) seq.push_back(vec1(n));
    const auto verdict = classify_sequence(fm, seq, 0.4, 1.0, 3);
    CHECK_FALSE(verdict.cauchy.certified);
    REQUIRE(verdict.cauchy.violation.has_value());
    CHECK_FALSE(verdict.g_cauchy.certified);
    REQUIRE(verdict.g_cauchy.violation.has_value());
    CHECK(verdict.classification == SequenceClass::NoneDetected);
    // the witness pair really violates the condition
    const auto [n, m] = *verdict.cauchy.violation;
    CHECK(fm.eval(seq[n], seq[m], 1.0) <= 0.6);
}

TEST_CASE("harmonic partial sums: fixed-gap certified, all-pairs fails") {
    const FuzzyMetric fm = standard_line();
    const auto seq = harmonic_prefix(2000);
    const auto verdict = classify_sequence(fm, seq, 0.05, 1.0, 5);
    CHECK(verdict.g_cauchy.certified);
    CHECK(verdict.g_cauchy.onset <= 200);
    CHECK_FALSE(verdict.cauchy.certified);
    REQUIRE(verdict.cauchy.violation.has_value());
    CHECK(verdict.classification == SequenceClass::GCauchy);
}

TEST_CASE("scans agree with the exhaustive oracle on random walks") {
    const FuzzyMetric fm = standard_line();
    Rng rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<Vector> seq;
        double x = rng.uniform(-1, 1);
        const double shrink = rng.uniform(0.3, 1.1);
        double step = rng.uniform(-2, 2);
        const std::size_t len = 4 + static_cast<std::size_t>(rng.uniform(0, 40));
        for (std::size_t n = 0; n < len; ++n) {
            seq.push_back(vec1(x));
            x += step;
            step *= shrink;
        }
        const double eps = rng.uniform(0.05, 0.6);
        const auto verdict = classify_sequence(fm, seq, eps, 1.0, 3);
        const auto cauchy_expected = oracle::cauchy_bruteforce(fm, seq, eps, 1.0);
        const auto g_expected = oracle::g_cauchy_bruteforce(fm, seq, eps, 1.0, 3);
        CHECK(verdict.cauchy.certified == cauchy_expected.certified);
        if (cauchy_expected.certified) CHECK(verdict.cauchy.onset == cauchy_expected.onset);
        CHECK(verdict.g_cauchy.certified == g_expected.certified);
        if (g_expected.certified) CHECK(verdict.g_cauchy.onset == g_expected.onset);
        // internal consistency: an all-pairs certificate implies every
        // fixed-gap certificate at an onset no later
        if (verdict.cauchy.certified) {
            CHECK(verdict.g_cauchy.certified);
            CHECK(verdict.g_cauchy.onset <= verdict.cauchy.onset);
        }
    }
}

TEST_CASE("convergence scan agrees with an exhaustive onset search") {
    const FuzzyMetric fm = standard_line();
    Rng rng(303);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<Vector> seq;
        double x = rng.uniform(-3, 3);
        const double shrink = rng.uniform(0.4, 1.05);
        double step = rng.uniform(-2, 2);
        const std::size_t len = 4 + static_cast<std::size_t>(rng.uniform(0, 30));
        for (std::size_t n = 0; n < len; ++n) {
            seq.push_back(vec1(x));
            x += step;
            step *= shrink;
        }
        const Vector limit = vec1(rng.uniform(-3, 3));
        const double eps = rng.uniform(0.05, 0.6);
        const auto scan = scan_convergence(fm, seq, limit, eps, 1.0);

        // exhaustive: try each onset up to the cap
        const std::size_t cap = std::min(len / 2, len - 2);
        bool expected_certified = false;
        std::size_t expected_onset = 0;
        for (std::size_t onset = 0; onset <= cap && !expected_certified; ++onset) {
            bool ok = true;
            for (std::size_t n = onset; n < len; ++n) {
                if (fm.eval(seq[n], limit, 1.0) <= 1.0 - eps) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                expected_certified = true;
                expected_onset = onset;
            }
        }
        CHECK(scan.certified == expected_certified);
        if (expected_certified) CHECK(scan.onset == expected_onset);
    }
}

TEST_CASE("classification against a supplied candidate limit") {
    const FuzzyMetric fm = standard_line();
    std::vector<Vector> seq;
    double x = 1.0;
    for (int n = 0; n < 60; ++n) {
        seq.push_back(vec1(x));
        x *= 0.5;
    }
    const auto verdict = classify_sequence(fm, seq, 0.05, 1.0, 5, vec1(0.0));
    CHECK(verdict.convergent.certified);
    CHECK(verdict.classification == SequenceClass::ConvergentTo);

    const auto wrong = classify_sequence(fm, seq, 0.05, 1.0, 5, vec1(9.0));
    CHECK_FALSE(wrong.convergent.certified);
    CHECK(wrong.classification == SequenceClass::Cauchy);
}

TEST_CASE("sequence CSV has the diagnostic columns and flags") {
    const FuzzyMetric fm = standard_line();
    const auto seq = harmonic_prefix(400);
    const auto verdict = classify_sequence(fm, seq, 0.05, 1.0, 5);
    std::ostringstream os;
    write_sequence_csv(os, fm, seq, verdict);
    const std::string csv = os.str();
    CHECK(csv.rfind("n,x0,theta_step,cauchy,g_cauchy\n", 0) == 0);
    // one header plus one row per point
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 401);
}

TEST_CASE("classify_sequence validates its inputs") {
    const FuzzyMetric fm = standard_line();
    const std::vector<Vector> tiny{vec1(0)};
    const std::vector<Vector> ok{vec1(0), vec1(1)};
    CHECK_THROWS_AS(classify_sequence(fm, tiny, 0.1, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(classify_sequence(fm, ok, 1.5, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(classify_sequence(fm, ok, 0.1, -1.0, 1), std::domain_error);
    CHECK_THROWS_AS(classify_sequence(fm, ok, 0.1, 1.0, 0), std::invalid_argument);
}

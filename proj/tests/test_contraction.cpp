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

#include <cmath>
#include <vector>

#include "ffp/contraction.hpp"
#include "oracles.hpp"

using namespace ffp;

namespace {

Vector vec1(double x) { return Vector::Constant(1, x); }

SingleMap scaling(double k) {
    return SingleMap::affine(Matrix::Constant(1, 1, k), Vector::Zero(1));
}

FuzzyMetric standard_line() { return standard_from_metric(PointSpace::euclidean(1)); }

}  // namespace

TEST_CASE("zeta evaluation and validation") {
    const ZetaFn half = ZetaFn::linear(0.5);
    CHECK(half.apply(2.0) == 1.0);
    CHECK(half.apply(1e-9) == doctest::Approx(5e-10).epsilon(1e-15));
    CHECK(half.kind() == ZetaKind::Linear);
    CHECK(half.k() == 0.5);

    const ZetaFn square = ZetaFn::custom([](double rho) { return rho * rho; });
    CHECK(square.apply(3.0) == 9.0);

    CHECK_THROWS_AS(ZetaFn::linear(0.0), std::invalid_argument);
    CHECK_THROWS_AS(ZetaFn::linear(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(half.apply(0.0), std::domain_error);
    CHECK_THROWS_AS(half.apply(-2.0), std::domain_error);

    const ZetaFn bad = ZetaFn::custom([](double rho) { return rho - 1.0; });
    CHECK_THROWS_AS(bad.apply(0.5), std::range_error);

    const ZetaFn nan_out = ZetaFn::custom([](double) { return std::nan(""); });
    CHECK_THROWS_AS(nan_out.apply(1.0), std::range_error);
}

TEST_CASE("descent probe on linear shrinkage") {
    const auto samples = default_pi_rho_samples();
    CHECK(samples.size() == 13);

    const auto good = probe_pi_membership(ZetaFn::linear(0.5), samples);
    CHECK(good.member);
    CHECK_FALSE(good.witness.has_value());

    const auto identity = probe_pi_membership(ZetaFn::linear(1.0), samples);
    CHECK_FALSE(identity.member);
    REQUIRE(identity.witness.has_value());

    // member exactly when the slope is below 1
    for (int i = 1; i <= 11; ++i) {
        const double k = i / 10.0;
        const auto verdict = probe_pi_membership(ZetaFn::linear(k), samples);
        CHECK(verdict.member == (k < 1.0));
    }
}

TEST_CASE("descent probe on the squaring function") {
    const ZetaFn square = ZetaFn::custom([](double rho) { return rho * rho; });

    const auto verdict = probe_pi_membership(square, default_pi_rho_samples());
    CHECK_FALSE(verdict.member);
    REQUIRE(verdict.witness.has_value());
    // the reported failure is a genuinely diverging start above 1
    CHECK(verdict.witness->rho > 1.0);
    CHECK(verdict.witness->value > verdict.divergence_cap);

    const std::vector<double> with_two{0.5, 2.0};
    const auto explicit_two = probe_pi_membership(square, with_two);
    CHECK_FALSE(explicit_two.member);
    REQUIRE(explicit_two.witness.has_value());
    CHECK(explicit_two.witness->rho == 2.0);
}

TEST_CASE("single-valued verification: halving map against halving zeta") {
    const FuzzyMetric fm = standard_line();
    const auto report = verify_single_contraction(fm, scaling(0.5), ZetaFn::linear(0.5));
    CHECK(report.passed);
    CHECK_FALSE(report.counterexample.has_value());
}

TEST_CASE("single-valued verification: expansion fails with a checkable witness") {
    const FuzzyMetric fm = standard_line();
    const SingleMap doubling = scaling(2.0);
    const ZetaFn half = ZetaFn::linear(0.5);
    const auto report = verify_single_contraction(fm, doubling, half);
    CHECK_FALSE(report.passed);
    REQUIRE(report.counterexample.has_value());
    const auto& cex = *report.counterexample;
    const double lhs =
        fm.eval(doubling.apply(cex.u), doubling.apply(cex.v), half.apply(cex.rho));
    const double rhs = fm.eval(cex.u, cex.v, cex.rho);
    CHECK(lhs == cex.lhs);
    CHECK(rhs == cex.rhs);
    CHECK(lhs < rhs - 1e-12);
}

TEST_CASE("planar affine map with operator norm 0.9 passes at matching zeta") {
    const FuzzyMetric fm = standard_from_metric(PointSpace::euclidean(2));
    Matrix m(2, 2);
    m << 0.9, 0.0, 0.0, 0.5;
    Vector b(2);
    b << 1.0, -2.0;
    const SingleMap f = SingleMap::affine(m, b);
    const auto report = verify_single_contraction(fm, f, ZetaFn::linear(0.9));
    CHECK(report.passed);
}

TEST_CASE("verification reports are reproducible for a fixed seed") {
    const FuzzyMetric fm = standard_line();
    SampleOptions opts;
    opts.seed = 321;
    const auto a = verify_single_contraction(fm, scaling(2.0), ZetaFn::linear(0.5), opts);
    const auto b = verify_single_contraction(fm, scaling(2.0), ZetaFn::linear(0.5), opts);
    REQUIRE(a.counterexample.has_value());
    REQUIRE(b.counterexample.has_value());
    CHECK(exactly_equal(a.counterexample->u, b.counterexample->u));
    CHECK(exactly_equal(a.counterexample->v, b.counterexample->v));
    CHECK(a.counterexample->rho == b.counterexample->rho);
    CHECK(a.counterexample->sample_index == b.counterexample->sample_index);
}

TEST_CASE("linear zeta on the standard metric is the plain Lipschitz bound") {
    // both routes computed independently on the same samples
    const FuzzyMetric fm = standard_line();
    const double k = 0.7;
    const SingleMap f = scaling(0.65);
    const ZetaFn zeta = ZetaFn::linear(k);
    Rng rng(77);
    const SampleBox box = SampleBox::centered(1);
    for (int i = 0; i < 500; ++i) {
        const Vector u = box.sample(rng);
        const Vector v = box.sample(rng);
        const double d_mapped = std::abs(f.apply(u)[0] - f.apply(v)[0]);
        const double d_plain = std::abs(u[0] - v[0]);
        const bool lipschitz = d_mapped <= k * d_plain + 1e-12;
        bool fuzzy = true;
        for (double rho : {0.01, 0.1, 1.0, 10.0, 100.0}) {
            if (fm.eval(f.apply(u), f.apply(v), zeta.apply(rho)) <
                fm.eval(u, v, rho) - 1e-12) {
                fuzzy = false;
                break;
            }
        }
        CHECK(lipschitz == fuzzy);
    }
}

TEST_CASE("multimap images deduplicate coincident branch outputs") {
    const MultiMap S({scaling(0.5), scaling(0.5), scaling(0.25)});
    const auto image = S.image(vec1(4.0));
    CHECK(image.size() == 2);
    CHECK(image.contains(vec1(2.0)));
    CHECK(image.contains(vec1(1.0)));

    const auto with_branches = S.image_with_branches(vec1(4.0));
    REQUIRE(with_branches.branch_of_point.size() == 2);
    CHECK(with_branches.branch_of_point[0] == 0);  // first producer wins
    CHECK(with_branches.branch_of_point[1] == 2);

    // everything collapses at the common fixed point
    CHECK(S.image(vec1(0.0)).size() == 1);
}

TEST_CASE("singleton multimap verification computes the single-valued values") {
    const FuzzyMetric fm = standard_line();
    const SingleMap f = scaling(0.5);
    const MultiMap S({f});
    const ZetaFn zeta = ZetaFn::linear(0.5);
    Rng rng(88);
    const SampleBox box = SampleBox::centered(1);
    for (int i = 0; i < 300; ++i) {
        const Vector u = box.sample(rng);
        const Vector v = box.sample(rng);
        for (double rho : {0.1, 1.0, 10.0}) {
            const double multi =
                hausdorff_eval(fm, S.image(u), S.image(v), zeta.apply(rho));
            const double single = fm.eval(f.apply(u), f.apply(v), zeta.apply(rho));
            CHECK(multi == single);
        }
    }
}

TEST_CASE("two-branch multimap passes at a dominating zeta") {
    // branches x/3 and x/2+1 move pairs by at most half their distance
    const FuzzyMetric fm = standard_line();
    Matrix third = Matrix::Constant(1, 1, 1.0 / 3.0);
    Matrix half = Matrix::Constant(1, 1, 0.5);
    const MultiMap S({SingleMap::affine(third, Vector::Zero(1)),
                      SingleMap::affine(half, Vector::Constant(1, 1.0))});
    const auto report = verify_multi_contraction(fm, S, ZetaFn::linear(0.6));
    CHECK(report.passed);

    // cross-check through the classical-distance oracle on fresh samples
    Rng rng(99);
    const SampleBox box = SampleBox::centered(1);
    for (int i = 0; i < 300; ++i) {
        const Vector u = box.sample(rng);
        const Vector v = box.sample(rng);
        const double h = oracle::classical_hausdorff(S.image(u), S.image(v));
        CHECK(h <= 0.6 * std::abs(u[0] - v[0]) + 1e-12);
    }
}

TEST_CASE("expanding multimap fails with a witness") {
    const FuzzyMetric fm = standard_line();
    const MultiMap S({scaling(2.0)});
    const auto report = verify_multi_contraction(fm, S, ZetaFn::linear(0.9));
    CHECK_FALSE(report.passed);
    REQUIRE(report.counterexample.has_value());
}

TEST_CASE("maps validate their inputs") {
    CHECK_THROWS_AS(SingleMap::affine(Matrix::Zero(2, 3), Vector::Zero(2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(SingleMap::affine(Matrix::Zero(2, 2), Vector::Zero(3)),
                    std::invalid_argument);
    CHECK_THROWS_AS(MultiMap(std::vector<SingleMap>{}), std::invalid_argument);
    CHECK_THROWS_AS(scaling(0.5).apply(Vector::Zero(2)), std::invalid_argument);
}

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

#include "ffp/tnorm.hpp"

using namespace ffp;

TEST_CASE("built-in evaluations match the closed forms") {
    const TNorm luk = TNorm::lukasiewicz();
    const TNorm prod = TNorm::product();
    const TNorm min = TNorm::minimum();

    CHECK(prod.apply(0.5, 0.4) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(luk.apply(0.5, 0.4) == 0.0);
    CHECK(min.apply(0.5, 0.4) == 0.4);

    // 1 is the identity for every kind
    for (const TNorm* t : {&luk, &prod, &min}) {
        for (double a : {0.0, 0.2, 0.7, 1.0}) {
            CHECK(t->apply(a, 1.0) == doctest::Approx(a).epsilon(1e-12));
            CHECK(t->apply(1.0, a) == doctest::Approx(a).epsilon(1e-12));
        }
    }
}

TEST_CASE("apply rejects out-of-range arguments") {
    const TNorm prod = TNorm::product();
    CHECK_THROWS_AS(prod.apply(-0.1, 0.5), std::domain_error);
    CHECK_THROWS_AS(prod.apply(0.5, 1.1), std::domain_error);
    CHECK_THROWS_AS(prod.apply(std::nan(""), 0.5), std::domain_error);
}

TEST_CASE("fold follows the left recursion with an empty fold of 1") {
    const TNorm luk = TNorm::lukasiewicz();
    const TNorm min = TNorm::minimum();

    const std::vector<double> nines{0.9, 0.9, 0.9};
    CHECK(luk.fold(nines) == doctest::Approx(0.7).epsilon(1e-15));

    const std::vector<double> mixed{0.3, 0.8, 0.5};
    CHECK(min.fold(mixed) == 0.3);

    const std::vector<double> empty;
    CHECK(luk.fold(empty) == 1.0);
    CHECK(min.fold(empty) == 1.0);
    CHECK(TNorm::product().fold(empty) == 1.0);
}

TEST_CASE("iterated powers") {
    const TNorm luk = TNorm::lukasiewicz();
    const TNorm min = TNorm::minimum();

    CHECK(luk.power(0.7, 0) == 1.0);
    CHECK(min.power(0.7, 0) == 1.0);
    CHECK(TNorm::product().power(0.7, 0) == 1.0);

    // max(10*0.9 - 9, 0) = 0
    CHECK(luk.power(0.9, 10) == 0.0);
    CHECK(min.power(0.7, 5) == 0.7);

    CHECK_THROWS_AS(luk.power(0.5, -1), std::domain_error);
}

TEST_CASE("power is non-increasing in n and fold of equal entries matches power") {
    for (TNormKind kind : {TNormKind::Lukasiewicz, TNormKind::Product, TNormKind::Minimum}) {
        const TNorm t = TNorm::from_kind(kind);
        for (double a : {0.0, 0.1, 0.5, 0.9, 1.0}) {
            double prev = 1.0;
            for (int n = 0; n <= 20; ++n) {
                const double value = t.power(a, n);
                CHECK(value <= prev);
                prev = value;
                if (n >= 1) {
                    const std::vector<double> copies(static_cast<std::size_t>(n), a);
                    CHECK(t.fold(copies) == value);
                }
            }
        }
    }
}

TEST_CASE("grid properties: commutative exactly, associative to 1e-12, below min") {
    for (TNormKind kind : {TNormKind::Lukasiewicz, TNormKind::Product, TNormKind::Minimum}) {
        const TNorm t = TNorm::from_kind(kind);
        for (int i = 0; i <= 20; ++i) {
            for (int j = 0; j <= 20; ++j) {
                const double a = i / 20.0;
                const double b = j / 20.0;
                CHECK(t.apply(a, b) == t.apply(b, a));
                CHECK(t.apply(a, b) <= std::min(a, b) + 1e-15);
                for (int k = 0; k <= 20; k += 4) {
                    const double c = k / 20.0;
                    CHECK(std::abs(t.apply(a, t.apply(b, c)) - t.apply(t.apply(a, b), c)) <=
                          1e-12);
                }
            }
            CHECK(t.apply(i / 20.0, 0.0) == 0.0);
        }
    }
}

TEST_CASE("axiom checker passes the built-ins") {
    for (TNormKind kind : {TNormKind::Lukasiewicz, TNormKind::Product, TNormKind::Minimum}) {
        const auto report = check_tnorm_axioms(TNorm::from_kind(kind), 50);
        CHECK(report.all_passed());
        CHECK(report.axioms.size() == 6);
    }
}

TEST_CASE("axiom checker rejects the averaging pseudo-norm with a witness") {
    const TNorm avg = TNorm::custom([](double a, double b) { return 0.5 * (a + b); });
    const auto report = check_tnorm_axioms(avg, 10);
    CHECK_FALSE(report.all_passed());

    const auto* assoc = report.find("associativity");
    REQUIRE(assoc != nullptr);
    CHECK_FALSE(assoc->passed);
    REQUIRE(assoc->counterexample.has_value());
    // the recorded triple really does violate associativity
    const auto& cex = *assoc->counterexample;
    const double lhs = 0.5 * (cex.a + 0.5 * (cex.b + cex.c));
    const double rhs = 0.5 * (0.5 * (cex.a + cex.b) + cex.c);
    CHECK(std::abs(lhs - rhs) > 1e-12);

    const auto* identity = report.find("identity");
    REQUIRE(identity != nullptr);
    CHECK_FALSE(identity->passed);
}

TEST_CASE("h-type probe accepts minimum and rejects the other built-ins") {
    const auto min_verdict = probe_h_type(TNorm::minimum());
    CHECK(min_verdict.holds);
    CHECK_FALSE(min_verdict.witness.has_value());

    for (TNormKind kind : {TNormKind::Lukasiewicz, TNormKind::Product}) {
        const TNorm t = TNorm::from_kind(kind);
        const auto verdict = probe_h_type(t);
        CHECK_FALSE(verdict.holds);
        REQUIRE(verdict.witness.has_value());
        const auto& w = *verdict.witness;
        // witness is checkable: the power really drops out of the band...
        CHECK(t.power(w.rho, w.n) <= 1.0 - w.eps);
        CHECK(w.n <= verdict.n_max);
        // ...and the rho lies inside every interval the probe tried
        for (double lambda : verdict.lambda_grid) {
            CHECK(w.rho > 1.0 - lambda);
        }
    }
}

TEST_CASE("h-type probe accepts minimum for arbitrary finite bounds") {
    const std::vector<double> eps{0.9, 0.5, 0.2, 0.05, 0.001};
    const std::vector<double> lambdas{0.0005, 0.3, 0.99};
    const auto verdict = probe_h_type(TNorm::minimum(), eps, lambdas, 1000);
    CHECK(verdict.holds);
}

TEST_CASE("h-type probe validates its bounds") {
    const TNorm min = TNorm::minimum();
    const std::vector<double> ok{0.5};
    const std::vector<double> bad{1.5};
    CHECK_THROWS_AS(probe_h_type(min, bad, ok, 10), std::invalid_argument);
    CHECK_THROWS_AS(probe_h_type(min, ok, bad, 10), std::invalid_argument);
    CHECK_THROWS_AS(probe_h_type(min, ok, ok, 0), std::invalid_argument);
}

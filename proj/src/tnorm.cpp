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

#include "ffp/tnorm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace ffp {

namespace {

constexpr Scalar kEqTol = 1e-12;

void require_unit_interval(Scalar x, const char* what) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::domain_error(std::string(what) + " outside [0,1]: " + format_scalar(x));
    }
}

}  // namespace

std::string to_string(TNormKind kind) {
    switch (kind) {
        case TNormKind::Lukasiewicz: return "lukasiewicz";
        case TNormKind::Product: return "product";
        case TNormKind::Minimum: return "minimum";
        case TNormKind::Custom: return "custom";
    }
    return "unknown";
}

std::optional<TNormKind> tnorm_kind_from_string(std::string_view name) {
    if (name == "lukasiewicz") return TNormKind::Lukasiewicz;
    if (name == "product") return TNormKind::Product;
    if (name == "minimum") return TNormKind::Minimum;
    if (name == "custom") return TNormKind::Custom;
    return std::nullopt;
}

TNorm::TNorm(TNormKind kind, Evaluator evaluator)
    : kind_(kind), evaluator_(std::move(evaluator)) {}

TNorm TNorm::lukasiewicz() {
    return TNorm(TNormKind::Lukasiewicz,
                 [](Scalar a, Scalar b) { return std::max(a + b - 1.0, 0.0); });
}

TNorm TNorm::product() {
    return TNorm(TNormKind::Product, [](Scalar a, Scalar b) { return a * b; });
}

TNorm TNorm::minimum() {
    return TNorm(TNormKind::Minimum, [](Scalar a, Scalar b) { return std::min(a, b); });
}

TNorm TNorm::custom(Evaluator evaluator) {
    if (!evaluator) throw std::invalid_argument("custom t-norm needs an evaluator");
    return TNorm(TNormKind::Custom, std::move(evaluator));
}

TNorm TNorm::from_kind(TNormKind kind) {
    switch (kind) {
        case TNormKind::Lukasiewicz: return lukasiewicz();
        case TNormKind::Product: return product();
        case TNormKind::Minimum: return minimum();
        case TNormKind::Custom: break;
    }
    throw std::invalid_argument("from_kind covers the built-in t-norms only");
}

Scalar TNorm::apply(Scalar a, Scalar b) const {
    require_unit_interval(a, "t-norm argument");
    require_unit_interval(b, "t-norm argument");
    return evaluator_(a, b);
}

Scalar TNorm::fold(std::span<const Scalar> values) const {
    Scalar acc = 1.0;  // empty fold
    for (Scalar v : values) acc = apply(acc, v);
    return acc;
}

Scalar TNorm::power(Scalar a, int n) const {
    if (n < 0) throw std::domain_error("t-norm power needs n >= 0");
    require_unit_interval(a, "t-norm argument");
    Scalar acc = 1.0;
    for (int i = 0; i < n; ++i) acc = apply(acc, a);
    return acc;
}

bool TNormAxiomReport::all_passed() const {
    return std::all_of(axioms.begin(), axioms.end(),
                       [](const TNormAxiomResult& r) { return r.passed; });
}

const TNormAxiomResult* TNormAxiomReport::find(std::string_view axiom_name) const {
    for (const auto& axiom : axioms) {
        if (axiom.name == axiom_name) return &axiom;
    }
    return nullptr;
}

TNormAxiomReport check_tnorm_axioms(const TNorm& t, int grid_resolution) {
    if (grid_resolution < 2) throw std::invalid_argument("grid_resolution must be >= 2");

    std::vector<Scalar> grid(static_cast<std::size_t>(grid_resolution) + 1);
    for (int i = 0; i <= grid_resolution; ++i) {
        grid[static_cast<std::size_t>(i)] = static_cast<Scalar>(i) / grid_resolution;
    }

    TNormAxiomReport report;
    report.grid_resolution = grid_resolution;

    auto add = [&report](std::string name, std::optional<TNormCounterexample> cex) {
        report.axioms.push_back({std::move(name), !cex.has_value(), std::move(cex)});
    };

    // range: values stay inside [0,1]
    {
        std::optional<TNormCounterexample> cex;
        for (Scalar a : grid) {
            for (Scalar b : grid) {
                const Scalar v = t.apply(a, b);
                if (!(v >= 0.0 && v <= 1.0)) {
                    cex = TNormCounterexample{a, b, 0, v, 0};
                    break;
                }
            }
            if (cex) break;
        }
        add("range", cex);
    }

    // commutativity, required exactly
    {
        std::optional<TNormCounterexample> cex;
        for (std::size_t i = 0; i < grid.size() && !cex; ++i) {
            for (std::size_t j = i; j < grid.size(); ++j) {
                const Scalar ab = t.apply(grid[i], grid[j]);
                const Scalar ba = t.apply(grid[j], grid[i]);
                if (ab != ba) {
                    cex = TNormCounterexample{grid[i], grid[j], 0, ab, ba};
                    break;
                }
            }
        }
        add("commutativity", cex);
    }

    // associativity, within 1e-12
    {
        std::optional<TNormCounterexample> cex;
        for (Scalar a : grid) {
            for (Scalar b : grid) {
                for (Scalar c : grid) {
                    const Scalar lhs = t.apply(a, t.apply(b, c));
                    const Scalar rhs = t.apply(t.apply(a, b), c);
                    if (std::abs(lhs - rhs) > kEqTol) {
                        cex = TNormCounterexample{a, b, c, lhs, rhs};
                        break;
                    }
                }
                if (cex) break;
            }
            if (cex) break;
        }
        add("associativity", cex);
    }

    // monotonicity, non-strict in each argument
    {
        std::optional<TNormCounterexample> cex;
        for (Scalar a : grid) {
            for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
                const Scalar lo = t.apply(a, grid[j]);
                const Scalar hi = t.apply(a, grid[j + 1]);
                if (lo > hi + kEqTol) {
                    cex = TNormCounterexample{a, grid[j], grid[j + 1], lo, hi};
                    break;
                }
                const Scalar lo2 = t.apply(grid[j], a);
                const Scalar hi2 = t.apply(grid[j + 1], a);
                if (lo2 > hi2 + kEqTol) {
                    cex = TNormCounterexample{grid[j], a, grid[j + 1], lo2, hi2};
                    break;
                }
            }
            if (cex) break;
        }
        add("monotonicity", cex);
    }

    // identity element 1
    {
        std::optional<TNormCounterexample> cex;
        for (Scalar a : grid) {
            const Scalar right = t.apply(a, 1.0);
            if (std::abs(right - a) > kEqTol) {
                cex = TNormCounterexample{a, 1.0, 0, right, a};
                break;
            }
            const Scalar left = t.apply(1.0, a);
            if (std::abs(left - a) > kEqTol) {
                cex = TNormCounterexample{1.0, a, 0, left, a};
                break;
            }
        }
        add("identity", cex);
    }

    // upper bound: no t-norm exceeds min
    {
        std::optional<TNormCounterexample> cex;
        for (Scalar a : grid) {
            for (Scalar b : grid) {
                const Scalar v = t.apply(a, b);
                const Scalar bound = std::min(a, b);
                if (v > bound + kEqTol) {
                    cex = TNormCounterexample{a, b, 0, v, bound};
                    break;
                }
            }
            if (cex) break;
        }
        add("upper-bound-min", cex);
    }

    return report;
}

std::vector<Scalar> default_h_type_epsilons() { return {0.5, 0.1, 0.01}; }

std::vector<Scalar> default_h_type_lambda_grid() {
    // 20 log-spaced values covering [1e-4, 0.9]
    std::vector<Scalar> grid(20);
    const Scalar lo = std::log(1e-4);
    const Scalar hi = std::log(0.9);
    for (int i = 0; i < 20; ++i) {
        grid[static_cast<std::size_t>(i)] = std::exp(lo + (hi - lo) * i / 19.0);
    }
    return grid;
}

namespace {

constexpr int kRhoSamplesPerLambda = 16;

// Looks for a sampled rho in (1-lambda, 1) whose iterated powers drop to
// 1-eps or below within n_max steps. Samples run from just below 1 down
// toward 1-lambda.
std::optional<HTypeWitness> falsify_lambda(const TNorm& t, Scalar eps, Scalar lambda,
                                           int n_max) {
    for (int j = 1; j <= kRhoSamplesPerLambda; ++j) {
        const Scalar rho = 1.0 - lambda * j / (kRhoSamplesPerLambda + 1.0);
        Scalar value = 1.0;
        for (int n = 1; n <= n_max; ++n) {
            value = t.apply(value, rho);
            if (value <= 1.0 - eps) {
                return HTypeWitness{n, rho, eps};
            }
        }
    }
    return std::nullopt;
}

}  // namespace

HTypeVerdict probe_h_type(const TNorm& t,
                          std::span<const Scalar> epsilons,
                          std::span<const Scalar> lambda_grid,
                          int n_max) {
    if (epsilons.empty() || lambda_grid.empty()) {
        throw std::invalid_argument("h-type probe needs nonempty grids");
    }
    if (n_max < 1) throw std::invalid_argument("h-type probe needs n_max >= 1");
    for (Scalar eps : epsilons) {
        if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("epsilons must lie in (0,1)");
    }
    for (Scalar lambda : lambda_grid) {
        if (!(lambda > 0.0 && lambda < 1.0)) {
            throw std::invalid_argument("lambda grid must lie in (0,1)");
        }
    }

    HTypeVerdict verdict;
    verdict.n_max = n_max;
    verdict.rho_samples_per_lambda = kRhoSamplesPerLambda;
    verdict.epsilons.assign(epsilons.begin(), epsilons.end());
    verdict.lambda_grid.assign(lambda_grid.begin(), lambda_grid.end());
    // Ascending lambdas make the smallest interval (1-lambda, 1) come first;
    // a witness from it lies in every interval tried.
    std::sort(verdict.lambda_grid.begin(), verdict.lambda_grid.end());

    for (Scalar eps : verdict.epsilons) {
        bool lambda_found = false;
        std::optional<HTypeWitness> smallest_lambda_failure;
        for (Scalar lambda : verdict.lambda_grid) {
            auto failure = falsify_lambda(t, eps, lambda, n_max);
            if (!failure) {
                lambda_found = true;
                break;
            }
            if (!smallest_lambda_failure) smallest_lambda_failure = failure;
        }
        if (!lambda_found) {
            verdict.holds = false;
            verdict.witness = smallest_lambda_failure;
            return verdict;
        }
    }

    verdict.holds = true;
    return verdict;
}

HTypeVerdict probe_h_type(const TNorm& t) {
    const auto eps = default_h_type_epsilons();
    const auto lambdas = default_h_type_lambda_grid();
    return probe_h_type(t, eps, lambdas, kDefaultHTypeMaxPower);
}

}  // namespace ffp

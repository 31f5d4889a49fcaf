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

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ffp/types.hpp"

namespace ffp {

enum class TNormKind { Lukasiewicz, Product, Minimum, Custom };

std::string to_string(TNormKind kind);
std::optional<TNormKind> tnorm_kind_from_string(std::string_view name);

/// A triangular norm: a binary operation on [0,1] that is commutative,
/// associative, monotone, and has 1 as its identity element. The three
/// built-ins use their closed forms; custom evaluators are accepted
/// unchecked, with check_tnorm_axioms as the due-diligence tool.
class TNorm {
  public:
    using Evaluator = std::function<Scalar(Scalar, Scalar)>;

    static TNorm lukasiewicz();
    static TNorm product();
    static TNorm minimum();
    static TNorm custom(Evaluator evaluator);
    static TNorm from_kind(TNormKind kind);  // built-ins only

    TNormKind kind() const { return kind_; }
    std::string name() const { return to_string(kind_); }

    /// Evaluates the operation. Throws std::domain_error if an argument
    /// lies outside [0,1].
    Scalar apply(Scalar a, Scalar b) const;

    /// n-ary extension: left fold over the list, with the empty fold
    /// defined as 1.
    Scalar fold(std::span<const Scalar> values) const;

    /// Iterated power: power(a, 0) = 1, power(a, n) = apply(power(a, n-1), a).
    Scalar power(Scalar a, int n) const;

  private:
    TNorm(TNormKind kind, Evaluator evaluator);

    TNormKind kind_;
    Evaluator evaluator_;
};

struct TNormCounterexample {
    Scalar a = 0;
    Scalar b = 0;
    Scalar c = 0;  // used by associativity only
    Scalar lhs = 0;
    Scalar rhs = 0;
};

struct TNormAxiomResult {
    std::string name;
    bool passed = true;
    std::optional<TNormCounterexample> counterexample;
};

struct TNormAxiomReport {
    std::vector<TNormAxiomResult> axioms;
    int grid_resolution = 0;

    bool all_passed() const;
    const TNormAxiomResult* find(std::string_view axiom_name) const;
};

/// Checks range, commutativity, associativity, monotonicity (non-strict),
/// identity, and the min upper bound on the uniform grid {i/grid_resolution}.
/// Each axiom records its first counterexample in grid scan order.
/// Commutativity is required exactly; the other numeric comparisons allow
/// 1e-12 of slack.
TNormAxiomReport check_tnorm_axioms(const TNorm& t, int grid_resolution);

struct HTypeWitness {
    int n = 0;       // power at which the iterate dropped
    Scalar rho = 0;  // argument whose iterates fell away from 1
    Scalar eps = 0;  // tolerance band that could not be met
};

/// Outcome of the bounded H-type search. holds=true means no falsification
/// was found within the recorded bounds, not a proof of membership.
struct HTypeVerdict {
    bool holds = false;
    std::optional<HTypeWitness> witness;
    int n_max = 0;
    int rho_samples_per_lambda = 0;
    std::vector<Scalar> epsilons;
    std::vector<Scalar> lambda_grid;
};

std::vector<Scalar> default_h_type_epsilons();     // {0.5, 0.1, 0.01}
std::vector<Scalar> default_h_type_lambda_grid();  // 20 log-spaced in [1e-4, 0.9]
inline constexpr int kDefaultHTypeMaxPower = 200;

/// Searches, for each epsilon, for a lambda such that every sampled
/// rho > 1-lambda keeps all iterated powers above 1-epsilon up to n_max.
/// If some epsilon admits no lambda from the grid, returns holds=false with
/// a witness drawn from the smallest lambda, so the witness rho exceeds
/// 1-lambda for every lambda tried.
HTypeVerdict probe_h_type(const TNorm& t,
                          std::span<const Scalar> epsilons,
                          std::span<const Scalar> lambda_grid,
                          int n_max);

/// Same probe with the default bounds.
HTypeVerdict probe_h_type(const TNorm& t);

}  // namespace ffp

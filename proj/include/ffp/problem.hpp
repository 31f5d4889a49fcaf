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

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ffp/contraction.hpp"
#include "ffp/tnorm.hpp"
#include "ffp/types.hpp"

namespace ffp {

struct ProblemError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Syntax-level failure; carries the 1-based line number.
struct ParseError : ProblemError {
    ParseError(int line, const std::string& message)
        : ProblemError("line " + std::to_string(line) + ": " + message), line(line) {}
    int line;
};

/// Semantic failure; carries the offending field.
struct ValidationError : ProblemError {
    ValidationError(std::string field_name, const std::string& message)
        : ProblemError(field_name + ": " + message), field(std::move(field_name)) {}
    std::string field;
};

struct AffineSpec {
    Matrix matrix;
    Vector offset;

    bool operator==(const AffineSpec& other) const;
};

/// A fully validated problem file. The format is line-oriented: sections in
/// square brackets, key = value pairs, vectors as comma-separated reals,
/// matrices as semicolon-separated row-major rows. Unknown sections or keys
/// are rejected.
struct ProblemSpec {
    Index dim = 1;
    std::string metric = "euclidean";
    TNormKind tnorm = TNormKind::Product;
    std::string fuzzy_kind = "standard";

    ZetaKind zeta_kind = ZetaKind::Linear;
    Scalar zeta_k = 0.5;

    std::optional<AffineSpec> map;       // exactly one of map / multimap
    std::vector<AffineSpec> multimap;

    Vector x0;
    Scalar tol = 1e-9;
    int max_iter = 10000;
    Scalar rho_ref = 1.0;
    int uniqueness_starts = 3;

    int pair_samples = 1000;
    std::vector<Scalar> rho_grid = default_rho_grid();
    std::optional<std::uint64_t> seed;
    std::optional<Vector> box_min;
    std::optional<Vector> box_max;

    bool operator==(const ProblemSpec& other) const;
};

/// Parses and validates problem-file text. Throws ParseError for syntax
/// problems (with the line) and ValidationError for semantic ones (with the
/// field).
ProblemSpec parse_problem(const std::string& text);

/// Canonical rendering; parse_problem(render_problem(spec)) == spec for
/// every valid spec.
std::string render_problem(const ProblemSpec& spec);

/// A sequence-diagnostic problem: classify the partial sums of 1/k under
/// the standard fuzzy metric on the line.
struct SequenceSpec {
    int terms = 10000;
    Scalar eps = 0.05;
    Scalar rho = 1.0;
    int p_max = 5;
};

using Problem = std::variant<ProblemSpec, SequenceSpec>;

struct Demo {
    std::string name;
    std::string summary;
    Problem problem;
};

/// Compiled-in demos: solver problems covering the converged /
/// counterexample / non-convergence outcomes, plus the harmonic sequence
/// diagnostic.
std::span<const Demo> demo_registry();

/// Looks a demo up by name; nullptr when absent.
const Demo* find_demo(std::string_view name);

}  // namespace ffp

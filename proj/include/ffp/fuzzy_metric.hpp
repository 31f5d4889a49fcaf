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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ffp/rng.hpp"
#include "ffp/tnorm.hpp"
#include "ffp/types.hpp"

namespace ffp {

using MetricFn = std::function<Scalar(const Vector&, const Vector&)>;

/// The ambient space: real vectors of a fixed dimension, optionally
/// carrying an ordinary metric. The metric is the plug-in surface for
/// users who want something other than the Euclidean distance.
struct PointSpace {
    Index dimension = 1;
    MetricFn base_metric;  // empty when the space is not metric-derived

    static PointSpace euclidean(Index dim);

    bool has_metric() const { return static_cast<bool>(base_metric); }

    /// Base-metric distance; throws std::logic_error without a metric.
    Scalar distance(const Vector& u, const Vector& v) const;
};

/// Graded nearness on a point space: a map (u, v, rho>0) -> (0,1] paired
/// with a t-norm for the triangle axiom. The value reads as "the degree to
/// which u and v are within scale rho".
class FuzzyMetric {
  public:
    using Evaluator = std::function<Scalar(const Vector&, const Vector&, Scalar)>;

    static FuzzyMetric custom(PointSpace space, TNorm tnorm, Evaluator evaluator);

    /// Evaluates the nearness at scale rho. Throws std::domain_error if
    /// rho <= 0 (the scale axis excludes zero).
    Scalar eval(const Vector& u, const Vector& v, Scalar rho) const;

    const PointSpace& space() const { return space_; }
    const TNorm& tnorm() const { return tnorm_; }

    /// True for metrics built by standard_from_metric, i.e. rho/(rho+d).
    bool standard_construction() const { return standard_; }

    friend FuzzyMetric standard_from_metric(const PointSpace& space, TNorm tnorm);

  private:
    FuzzyMetric(PointSpace space, TNorm tnorm, Evaluator evaluator, bool standard);

    PointSpace space_;
    TNorm tnorm_;
    Evaluator evaluator_;
    bool standard_ = false;
};

/// Builds the fuzzy metric rho/(rho + d(u,v)) from the space's base metric.
/// The default pairing is the product t-norm; any weaker or equal t-norm
/// keeps the triangle axiom intact. Throws std::invalid_argument when the
/// space has no base metric.
FuzzyMetric standard_from_metric(const PointSpace& space, TNorm tnorm = TNorm::product());

struct FmCounterexample {
    Vector u, v, z;
    Scalar rho = 0;
    Scalar s = 0;
    Scalar lhs = 0;
    Scalar rhs = 0;
    std::size_t sample_index = 0;
};

struct FmAxiomResult {
    std::string name;
    bool passed = true;
    std::optional<FmCounterexample> counterexample;
};

struct FmAxiomReport {
    std::vector<FmAxiomResult> axioms;
    int sample_count = 0;
    std::uint64_t seed = 0;
    std::vector<Scalar> rho_grid;

    bool all_passed() const;
    const FmAxiomResult* find(std::string_view axiom_name) const;
};

/// Draws seeded random point triples and checks positivity, identity,
/// symmetry, the t-norm triangle inequality over rho_grid x rho_grid, and
/// monotone continuity in rho. Counterexamples are the first in sample
/// order; reruns with the same seed reproduce them bit for bit.
FmAxiomReport check_fm_axioms(const FuzzyMetric& fm, int sample_count,
                              std::span<const Scalar> rho_grid, std::uint64_t seed,
                              const std::optional<SampleBox>& box = std::nullopt);

/// Result of scanning one tail condition over a finite prefix. `onset` is
/// the least index from which the condition held on the whole tail; a scan
/// certifies only when the onset covers the trailing half of the data
/// (onset <= len/2), so late-breaking violations fail the scan instead of
/// being absorbed by a vacuously short tail.
struct SequenceScan {
    bool certified = false;
    std::size_t onset = 0;
    std::optional<std::pair<std::size_t, std::size_t>> violation;
};

enum class SequenceClass { ConvergentTo, Cauchy, GCauchy, NoneDetected };

std::string to_string(SequenceClass c);

struct SequenceVerdict {
    SequenceClass classification = SequenceClass::NoneDetected;
    std::optional<Vector> limit;  // candidate limit, echoed when supplied
    SequenceScan convergent;      // meaningful only when limit was supplied
    SequenceScan cauchy;
    SequenceScan g_cauchy;                   // aggregate over p = 1..p_max
    std::vector<SequenceScan> g_cauchy_per_p;  // index p-1
    Scalar eps = 0;
    Scalar rho = 0;
    int p_max = 0;
    std::size_t onset_cap = 0;
};

/// Scan of the fixed-gap condition eval(x_n, x_{n+p}, rho) > 1-eps.
SequenceScan scan_g_cauchy(const FuzzyMetric& fm, std::span<const Vector> seq,
                           Scalar eps, Scalar rho, int p);

/// Scan of the all-pairs condition eval(x_n, x_m, rho) > 1-eps for m,n >= N.
SequenceScan scan_cauchy(const FuzzyMetric& fm, std::span<const Vector> seq,
                         Scalar eps, Scalar rho);

/// Scan of eval(x_n, limit, rho) > 1-eps.
SequenceScan scan_convergence(const FuzzyMetric& fm, std::span<const Vector> seq,
                              const Vector& limit, Scalar eps, Scalar rho);

/// Classifies a finite prefix at fixed (eps, rho): runs the Cauchy scan, the
/// fixed-gap scans for p <= p_max, and (when a candidate limit is supplied)
/// the convergence scan. The classification reports the strongest certified
/// property; verdicts carry the tested bounds, since a finite prefix can
/// only ever certify what it shows.
SequenceVerdict classify_sequence(const FuzzyMetric& fm, std::span<const Vector> seq,
                                  Scalar eps, Scalar rho, int p_max,
                                  const std::optional<Vector>& limit = std::nullopt);

/// CSV rows n, coordinates, step nearness eval(x_n, x_{n+1}, rho), and the
/// running cauchy / g_cauchy flags (1 once the certified onset is reached).
void write_sequence_csv(std::ostream& os, const FuzzyMetric& fm,
                        std::span<const Vector> seq, const SequenceVerdict& verdict);

}  // namespace ffp

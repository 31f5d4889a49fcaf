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
#include <vector>

#include "ffp/fuzzy_metric.hpp"
#include "ffp/hausdorff.hpp"
#include "ffp/rng.hpp"
#include "ffp/types.hpp"

namespace ffp {

enum class ZetaKind { Linear, Custom };

/// A scale-shrinking function (0,inf) -> (0,inf). The linear kind is
/// zeta(rho) = k*rho; custom evaluators are accepted unchecked and probed
/// with probe_pi_membership.
class ZetaFn {
  public:
    using Evaluator = std::function<Scalar(Scalar)>;

    static ZetaFn linear(Scalar k);  // requires k > 0
    static ZetaFn custom(Evaluator evaluator);

    ZetaKind kind() const { return kind_; }
    Scalar k() const { return k_; }  // meaningful for the linear kind

    /// Throws std::domain_error for rho <= 0 and std::range_error if the
    /// evaluator produces a non-positive value.
    Scalar apply(Scalar rho) const;

  private:
    ZetaFn(ZetaKind kind, Scalar k, Evaluator evaluator);

    ZetaKind kind_;
    Scalar k_ = 0;
    Evaluator evaluator_;
};

struct PiWitness {
    Scalar rho = 0;    // starting scale whose orbit failed
    int n = 0;         // step at which the failure was established
    Scalar value = 0;  // orbit value there
};

/// Bounded probe of the descent condition "iterates of zeta tend to zero".
/// member=true means every sampled orbit dropped below eps_pi within n_max
/// steps; it is a non-falsification within the recorded bounds, not a proof.
struct PiVerdict {
    bool member = false;
    std::optional<PiWitness> witness;
    std::vector<Scalar> rho_samples;
    Scalar eps_pi = 0;
    int n_max = 0;
    Scalar divergence_cap = 0;
};

std::vector<Scalar> default_pi_rho_samples();  // 13 log-spaced in [1e-3, 1e3]
inline constexpr Scalar kDefaultPiEps = 1e-6;
inline constexpr int kDefaultPiMaxIter = 200;
inline constexpr Scalar kPiDivergenceCap = 1e12;

/// Iterates zeta from each sample. An orbit that climbs past the divergence
/// cap settles the probe immediately with that witness; orbits that merely
/// fail to descend within n_max are reported after the scan (first sample
/// order) when nothing diverged.
PiVerdict probe_pi_membership(const ZetaFn& zeta, std::span<const Scalar> rho_samples,
                              Scalar eps_pi = kDefaultPiEps, int n_max = kDefaultPiMaxIter);

/// A self-map of the ambient space.
class SingleMap {
  public:
    using Evaluator = std::function<Vector(const Vector&)>;

    static SingleMap affine(Matrix m, Vector offset);
    static SingleMap custom(Index dimension, Evaluator evaluator);

    Vector apply(const Vector& u) const;
    Index dimension() const { return dimension_; }

    bool is_affine() const { return affine_; }
    const Matrix& matrix() const { return matrix_; }
    const Vector& offset() const { return offset_; }

  private:
    SingleMap(Index dimension, bool affine, Matrix m, Vector offset, Evaluator evaluator);

    Index dimension_;
    bool affine_;
    Matrix matrix_;
    Vector offset_;
    Evaluator evaluator_;
};

/// A finite-branch multi-valued map: the image of a point is the set of its
/// branch images, deduplicated.
class MultiMap {
  public:
    explicit MultiMap(std::vector<SingleMap> branches);

    FiniteCompactSet image(const Vector& u) const;

    struct BranchImage {
        FiniteCompactSet set;
        std::vector<int> branch_of_point;  // first branch producing each point
    };
    BranchImage image_with_branches(const Vector& u) const;

    const std::vector<SingleMap>& branches() const { return branches_; }
    Index dimension() const { return branches_.front().dimension(); }

  private:
    std::vector<SingleMap> branches_;
};

std::vector<Scalar> default_rho_grid();  // {0.01, 0.1, 1, 10, 100}

/// Sampling protocol for the verification passes.
struct SampleOptions {
    int pair_samples = 1000;
    std::vector<Scalar> rho_grid = default_rho_grid();
    std::uint64_t seed = kDefaultSeed;
    std::optional<SampleBox> box;  // defaults to [-10,10]^dim
};

struct ContractionCounterexample {
    Vector u, v;
    Scalar rho = 0;
    Scalar lhs = 0;  // nearness after mapping, at the shrunk scale
    Scalar rhs = 0;  // nearness before mapping
    std::size_t sample_index = 0;
};

/// A pass states "no counterexample found at (samples, grid, seed)", never a
/// proof over the whole space. The protocol is recorded alongside.
struct VerificationReport {
    bool passed = true;
    std::optional<ContractionCounterexample> counterexample;
    int pair_samples = 0;
    std::vector<Scalar> rho_grid;
    std::uint64_t seed = 0;
    SampleBox box;
    Scalar tolerance = 1e-12;
};

/// Checks eval(f u, f v, zeta(rho)) >= eval(u, v, rho) on seeded random
/// pairs across the grid; the first counterexample in (sample, grid) order
/// is reported.
VerificationReport verify_single_contraction(const FuzzyMetric& fm, const SingleMap& f,
                                             const ZetaFn& zeta,
                                             const SampleOptions& opts = {});

/// Same protocol with the set-to-set nearness on branch images.
VerificationReport verify_multi_contraction(const FuzzyMetric& fm, const MultiMap& S,
                                            const ZetaFn& zeta,
                                            const SampleOptions& opts = {});

}  // namespace ffp

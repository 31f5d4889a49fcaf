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

#include <cstddef>
#include <vector>

#include "ffp/fuzzy_metric.hpp"
#include "ffp/types.hpp"

namespace ffp {

/// A nonempty, deduplicated list of points. On finite sets every sup/inf in
/// the set-to-set nearness is an attained max/min, so no approximation is
/// involved anywhere downstream.
class FiniteCompactSet {
  public:
    explicit FiniteCompactSet(std::vector<Vector> points);

    static FiniteCompactSet singleton(Vector point);

    const std::vector<Vector>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    const Vector& operator[](std::size_t i) const { return points_[i]; }
    Index dimension() const { return points_.front().size(); }

    /// Exact-coordinate membership.
    bool contains(const Vector& p) const;

  private:
    std::vector<Vector> points_;
};

struct PointToSetResult {
    Scalar value = 0;    // best nearness over the set
    std::size_t index = 0;  // attaining point, lowest index on ties
};

/// Best nearness from a point into a set: max over v in B of eval(u, v, rho),
/// together with the attaining index. Ties break to the lowest stored index
/// so downstream orbits are reproducible.
PointToSetResult point_to_set(const FuzzyMetric& fm, const Vector& u,
                              const FiniteCompactSet& B, Scalar rho);

/// Set-to-set nearness: the minimum of the two directed terms
/// min over v in B of [max over u in A of eval(u,v,rho)] and vice versa.
/// Symmetric by construction and exactly 1 when A and B coincide.
Scalar hausdorff_eval(const FuzzyMetric& fm, const FiniteCompactSet& A,
                      const FiniteCompactSet& B, Scalar rho);

}  // namespace ffp

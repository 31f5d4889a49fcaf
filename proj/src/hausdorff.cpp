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

#include "ffp/hausdorff.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace ffp {

FiniteCompactSet::FiniteCompactSet(std::vector<Vector> points) {
    if (points.empty()) throw std::invalid_argument("finite compact set must be nonempty");
    const Index dim = points.front().size();
    points_.reserve(points.size());
    for (auto& p : points) {
        if (p.size() != dim) {
            throw std::invalid_argument("finite compact set points must share a dimension");
        }
        const bool duplicate = std::any_of(
            points_.begin(), points_.end(),
            [&p](const Vector& q) { return exactly_equal(p, q); });
        if (!duplicate) points_.push_back(std::move(p));
    }
}

FiniteCompactSet FiniteCompactSet::singleton(Vector point) {
    std::vector<Vector> pts;
    pts.push_back(std::move(point));
    return FiniteCompactSet(std::move(pts));
}

bool FiniteCompactSet::contains(const Vector& p) const {
    return std::any_of(points_.begin(), points_.end(),
                       [&p](const Vector& q) { return exactly_equal(p, q); });
}

PointToSetResult point_to_set(const FuzzyMetric& fm, const Vector& u,
                              const FiniteCompactSet& B, Scalar rho) {
    if (!(rho > 0.0)) throw std::domain_error("point_to_set needs rho > 0");
    PointToSetResult best{fm.eval(u, B[0], rho), 0};
    for (std::size_t i = 1; i < B.size(); ++i) {
        const Scalar value = fm.eval(u, B[i], rho);
        if (value > best.value) best = {value, i};
    }
    return best;
}

namespace {

// min over the probe set of the best nearness into the target set
Scalar directed_term(const FuzzyMetric& fm, const FiniteCompactSet& probe,
                     const FiniteCompactSet& target, Scalar rho) {
    Scalar worst = 1.0;
    for (std::size_t i = 0; i < probe.size(); ++i) {
        worst = std::min(worst, point_to_set(fm, probe[i], target, rho).value);
    }
    return worst;
}

}  // namespace

Scalar hausdorff_eval(const FuzzyMetric& fm, const FiniteCompactSet& A,
                      const FiniteCompactSet& B, Scalar rho) {
    if (!(rho > 0.0)) throw std::domain_error("hausdorff_eval needs rho > 0");
    return std::min(directed_term(fm, B, A, rho), directed_term(fm, A, B, rho));
}

}  // namespace ffp

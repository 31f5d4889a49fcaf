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

#include <cstdint>
#include <random>

#include "ffp/types.hpp"

namespace ffp {

inline constexpr std::uint64_t kDefaultSeed = 1729;

/// Seeded uniform sampler. Doubles are built from the top 53 bits of the
/// engine output rather than std::uniform_real_distribution, so the same
/// seed yields the same draws on every standard library.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform draw from [lo, hi).
    Scalar uniform(Scalar lo, Scalar hi) {
        const Scalar u01 = static_cast<Scalar>(engine_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u01;
    }

  private:
    std::mt19937_64 engine_;
};

/// Axis-aligned box that random points are drawn from.
struct SampleBox {
    Vector lo;
    Vector hi;

    static SampleBox centered(Index dim, Scalar half_width = 10.0) {
        SampleBox box;
        box.lo = Vector::Constant(dim, -half_width);
        box.hi = Vector::Constant(dim, half_width);
        return box;
    }

    Index dim() const { return lo.size(); }

    Vector sample(Rng& rng) const {
        Vector p(lo.size());
        for (Index i = 0; i < lo.size(); ++i) p[i] = rng.uniform(lo[i], hi[i]);
        return p;
    }
};

}  // namespace ffp

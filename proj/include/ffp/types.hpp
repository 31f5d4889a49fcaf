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

#include <Eigen/Core>

#include <cstdint>
#include <cstdio>
#include <string>

namespace ffp {

using Scalar = double;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Coordinate-wise exact equality (no tolerance).
inline bool exactly_equal(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) return false;
    for (Index i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return false;
    }
    return true;
}

/// Formats a scalar with 17 significant digits, enough for an exact
/// decimal round-trip of any double.
inline std::string format_scalar(Scalar x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return std::string(buf);
}

/// Short form for human-readable report text; not for round-tripping.
inline std::string format_scalar_brief(Scalar x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", x);
    return std::string(buf);
}

inline std::string format_vector(const Vector& v, const char* sep = ", ") {
    std::string out;
    for (Index i = 0; i < v.size(); ++i) {
        if (i > 0) out += sep;
        out += format_scalar(v[i]);
    }
    return out;
}

}  // namespace ffp

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

#include <filesystem>
#include <optional>
#include <string>

#include "ffp/problem.hpp"
#include "ffp/types.hpp"

namespace ffp {

enum class Subcommand { Verify, Solve, Trace };

/// Exit codes: 0 all-pass/converged, 1 I/O failure, 2 counterexample or
/// domain error, 3 iteration budget exhausted.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitCounterexample = 2;
inline constexpr int kExitMaxIter = 3;

struct RunOptions {
    std::filesystem::path output_dir = ".";
    bool skip_verify = false;
    std::optional<std::uint64_t> seed;      // --seed, strongest
    std::optional<std::uint64_t> env_seed;  // FFP_SEED, weakest
    std::optional<Scalar> tol;
    std::optional<int> max_iter;
};

/// Executes a subcommand against a problem, writing report.txt plus (for
/// solver runs) certificate.kv and trace.csv into the output directory.
/// Returns the exit code; never throws.
int run(Subcommand cmd, const Problem& problem, const std::string& label,
        const RunOptions& options);

}  // namespace ffp

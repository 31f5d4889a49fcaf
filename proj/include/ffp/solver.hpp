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

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ffp/contraction.hpp"
#include "ffp/fuzzy_metric.hpp"
#include "ffp/hausdorff.hpp"
#include "ffp/rng.hpp"
#include "ffp/types.hpp"

namespace ffp {

/// Thrown when a map produces non-finite coordinates during iteration.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SolverConfig {
    Vector x0;
    Scalar tol = 1e-9;         // threshold on the residual 1 - theta
    int max_iter = 10000;
    Scalar rho_ref = 1.0;      // reference scale for residuals and selection
    int uniqueness_starts = 3; // extra seeded starts for the agreement check
    std::uint64_t seed = kDefaultSeed;
    std::optional<SampleBox> start_box;  // defaults to [-10,10]^dim
};

enum class SolveStatus { Converged, MaxIterExceeded, HypothesisFailed };

std::string to_string(SolveStatus status);

struct OrbitTrace {
    std::vector<Vector> iterates;       // u_0 ... u_N
    std::vector<Scalar> theta_steps;    // eval(u_n, u_{n+1}, rho_ref), one per step
    std::vector<int> selected_branches; // multi-valued runs: branch chosen per step
};

struct GCauchyDiagnostic {
    int p = 0;
    bool certified = false;
    std::size_t onset = 0;
};

struct UniquenessCheck {
    std::vector<Vector> starts;     // the alternate seeded starting points
    std::vector<Vector> endpoints;  // endpoints of the converged reruns
    bool all_converged = false;
    Scalar max_pairwise_distance = 0;  // over the endpoints together with z
};

/// Everything a solver run certifies: the estimate, the orbit, the residual
/// at the estimate, tail diagnostics, and the cross-checks that were run.
struct Certificate {
    SolveStatus status = SolveStatus::MaxIterExceeded;
    std::optional<Vector> fixed_point;
    Scalar final_residual = 1.0;  // 1 - eval(z, image of z, rho_ref)
    OrbitTrace trace;
    Scalar rho_ref = 1.0;
    Scalar tol = 1e-9;
    std::vector<GCauchyDiagnostic> g_cauchy;  // gaps p = 1..5 on the orbit
    Scalar g_cauchy_eps = 0.01;
    std::optional<UniquenessCheck> uniqueness;
    std::optional<Scalar> selection_scale;  // multi-valued runs: zeta(rho_ref)
    std::optional<ContractionCounterexample> hypothesis_counterexample;
    std::vector<Scalar> metric_steps;  // ordinary-metric runs: d(u_n, u_{n+1})
};

/// Picard iteration u_{n+1} = f(u_n). Stops once the step residual
/// 1 - eval(u_n, u_{n+1}, rho_ref) reaches tol and the candidate's own image
/// confirms it, so converged certificates always satisfy
/// final_residual <= tol. With uniqueness_starts > 0, reruns from seeded
/// random starts and records the endpoint spread.
Certificate solve_single(const FuzzyMetric& fm, const SingleMap& f,
                         const SolverConfig& cfg);

/// Orbit construction for a multi-valued map: each step evaluates the image
/// set and selects the point nearest to the current iterate at the shrunk
/// scale zeta(rho_ref) (ties to the lowest index). Stops when the current
/// iterate sits within tol of its own image set.
Certificate solve_multi(const FuzzyMetric& fm, const MultiMap& S, const ZetaFn& zeta,
                        const SolverConfig& cfg);

/// Ordinary-metric front end: samples the scale condition
/// rho * d(f u, f v) <= zeta(rho) * d(u, v), constructs the standard fuzzy
/// metric, and delegates to solve_single. A sampled violation yields a
/// hypothesis_failed certificate instead of an orbit. Produces iterates
/// bit-identical to solve_single over standard_from_metric(space).
Certificate solve_classic(const PointSpace& space, const SingleMap& f, const ZetaFn& zeta,
                          const SolverConfig& cfg, const SampleOptions& verify_opts = {});

/// 1 - point_to_set(fm, x, S(x), rho).value: zero exactly when x lies in its
/// own image set.
Scalar inclusion_residual(const FuzzyMetric& fm, const Vector& x, const MultiMap& S,
                          Scalar rho);

/// Human-readable certificate summary.
std::string certificate_report(const Certificate& cert);

/// Machine-readable key=value block.
std::string certificate_kv(const Certificate& cert);

/// CSV columns n, coordinates, theta_step, then branch_index for
/// multi-valued runs; with_g_cauchy_flags adds one running 0/1 column per
/// diagnosed gap.
void write_trace_csv(std::ostream& os, const Certificate& cert,
                     bool with_g_cauchy_flags = false);

}  // namespace ffp

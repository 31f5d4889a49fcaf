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

#include "ffp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace ffp {

namespace {

constexpr int kGCauchyMaxGap = 5;

void validate_config(const SolverConfig& cfg, Index dim) {
    if (cfg.x0.size() != dim) {
        throw std::invalid_argument("solver start point has the wrong dimension");
    }
    if (!cfg.x0.allFinite()) throw std::invalid_argument("solver start point must be finite");
    if (!(cfg.tol > 0.0 && cfg.tol < 1.0)) {
        throw std::invalid_argument("solver tol must lie in (0,1)");
    }
    if (cfg.max_iter < 1) throw std::invalid_argument("solver max_iter must be >= 1");
    if (!(cfg.rho_ref > 0.0)) throw std::invalid_argument("solver rho_ref must be positive");
    if (cfg.uniqueness_starts < 0) {
        throw std::invalid_argument("uniqueness_starts must be >= 0");
    }
}

void require_finite(const Vector& p, std::size_t step) {
    if (!p.allFinite()) {
        throw NumericError("map produced non-finite coordinates at step " +
                           std::to_string(step));
    }
}

std::vector<GCauchyDiagnostic> orbit_g_cauchy(const FuzzyMetric& fm,
                                              const std::vector<Vector>& orbit,
                                              Scalar eps, Scalar rho_ref) {
    std::vector<GCauchyDiagnostic> diags;
    if (orbit.size() < 2) return diags;
    for (int p = 1; p <= kGCauchyMaxGap; ++p) {
        const SequenceScan scan = scan_g_cauchy(fm, orbit, eps, rho_ref, p);
        diags.push_back({p, scan.certified, scan.onset});
    }
    return diags;
}

Scalar endpoint_distance(const FuzzyMetric& fm, const Vector& a, const Vector& b) {
    if (fm.space().has_metric()) return fm.space().distance(a, b);
    return (a - b).norm();
}

// Core single-valued iteration; shared by the main run and the
// alternate-start reruns.
struct OrbitResult {
    SolveStatus status = SolveStatus::MaxIterExceeded;
    std::optional<Vector> fixed_point;
    Scalar final_residual = 1.0;
    std::vector<Vector> iterates;
    std::vector<Scalar> theta_steps;
};

OrbitResult run_picard(const FuzzyMetric& fm, const SingleMap& f, const Vector& x0,
                       Scalar tol, int max_iter, Scalar rho_ref) {
    OrbitResult result;
    result.iterates.push_back(x0);

    Vector image = f.apply(x0);
    require_finite(image, 0);
    Scalar theta = fm.eval(result.iterates.back(), image, rho_ref);

    while (static_cast<int>(result.theta_steps.size()) < max_iter) {
        result.iterates.push_back(image);
        result.theta_steps.push_back(theta);

        if (1.0 - theta <= tol) {
            // confirm the candidate against its own image, so the certified
            // residual is the one at the reported fixed point
            const Vector next = f.apply(result.iterates.back());
            require_finite(next, result.theta_steps.size());
            const Scalar theta_next = fm.eval(result.iterates.back(), next, rho_ref);
            if (1.0 - theta_next <= tol) {
                result.status = SolveStatus::Converged;
                result.fixed_point = result.iterates.back();
                result.final_residual = 1.0 - theta_next;
                return result;
            }
            image = next;
            theta = theta_next;
            continue;
        }

        image = f.apply(result.iterates.back());
        require_finite(image, result.theta_steps.size());
        theta = fm.eval(result.iterates.back(), image, rho_ref);
    }

    result.status = SolveStatus::MaxIterExceeded;
    result.final_residual = 1.0 - result.theta_steps.back();
    return result;
}

}  // namespace

std::string to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::Converged: return "converged";
        case SolveStatus::MaxIterExceeded: return "max_iter_exceeded";
        case SolveStatus::HypothesisFailed: return "hypothesis_failed";
    }
    return "unknown";
}

Certificate solve_single(const FuzzyMetric& fm, const SingleMap& f,
                         const SolverConfig& cfg) {
    const Index dim = fm.space().dimension;
    if (f.dimension() != dim) {
        throw std::invalid_argument("map dimension does not match the space");
    }
    validate_config(cfg, dim);

    Certificate cert;
    cert.rho_ref = cfg.rho_ref;
    cert.tol = cfg.tol;

    OrbitResult main = run_picard(fm, f, cfg.x0, cfg.tol, cfg.max_iter, cfg.rho_ref);
    cert.status = main.status;
    cert.fixed_point = main.fixed_point;
    cert.final_residual = main.final_residual;
    cert.trace.iterates = std::move(main.iterates);
    cert.trace.theta_steps = std::move(main.theta_steps);
    cert.g_cauchy = orbit_g_cauchy(fm, cert.trace.iterates, cert.g_cauchy_eps, cfg.rho_ref);

    if (cert.status == SolveStatus::Converged && cfg.uniqueness_starts > 0) {
        UniquenessCheck check;
        check.all_converged = true;
        const SampleBox box = cfg.start_box.value_or(SampleBox::centered(dim));
        Rng rng(cfg.seed);
        for (int i = 0; i < cfg.uniqueness_starts; ++i) {
            const Vector start = box.sample(rng);
            check.starts.push_back(start);
            OrbitResult rerun = run_picard(fm, f, start, cfg.tol, cfg.max_iter, cfg.rho_ref);
            if (rerun.status == SolveStatus::Converged) {
                check.endpoints.push_back(*rerun.fixed_point);
            } else {
                check.all_converged = false;
            }
        }
        std::vector<Vector> all = check.endpoints;
        all.push_back(*cert.fixed_point);
        Scalar spread = 0;
        for (std::size_t i = 0; i < all.size(); ++i) {
            for (std::size_t j = i + 1; j < all.size(); ++j) {
                spread = std::max(spread, endpoint_distance(fm, all[i], all[j]));
            }
        }
        check.max_pairwise_distance = spread;
        cert.uniqueness = std::move(check);
    }

    return cert;
}

Certificate solve_multi(const FuzzyMetric& fm, const MultiMap& S, const ZetaFn& zeta,
                        const SolverConfig& cfg) {
    const Index dim = fm.space().dimension;
    if (S.dimension() != dim) {
        throw std::invalid_argument("multimap dimension does not match the space");
    }
    validate_config(cfg, dim);

    Certificate cert;
    cert.rho_ref = cfg.rho_ref;
    cert.tol = cfg.tol;
    const Scalar selection_scale = zeta.apply(cfg.rho_ref);
    cert.selection_scale = selection_scale;

    cert.trace.iterates.push_back(cfg.x0);
    while (true) {
        const Vector& current = cert.trace.iterates.back();
        const MultiMap::BranchImage image = S.image_with_branches(current);
        for (std::size_t i = 0; i < image.set.size(); ++i) {
            require_finite(image.set[i], cert.trace.theta_steps.size());
        }

        const PointToSetResult inclusion = point_to_set(fm, current, image.set, cfg.rho_ref);
        if (1.0 - inclusion.value <= cfg.tol) {
            cert.status = SolveStatus::Converged;
            cert.fixed_point = current;
            cert.final_residual = 1.0 - inclusion.value;
            break;
        }
        if (static_cast<int>(cert.trace.theta_steps.size()) >= cfg.max_iter) {
            cert.status = SolveStatus::MaxIterExceeded;
            cert.final_residual = 1.0 - inclusion.value;
            break;
        }

        const PointToSetResult selection = point_to_set(fm, current, image.set, selection_scale);
        const Vector next = image.set[selection.index];
        cert.trace.theta_steps.push_back(fm.eval(current, next, cfg.rho_ref));
        cert.trace.selected_branches.push_back(image.branch_of_point[selection.index]);
        cert.trace.iterates.push_back(next);
    }

    cert.g_cauchy = orbit_g_cauchy(fm, cert.trace.iterates, cert.g_cauchy_eps, cfg.rho_ref);
    return cert;
}

Certificate solve_classic(const PointSpace& space, const SingleMap& f, const ZetaFn& zeta,
                          const SolverConfig& cfg, const SampleOptions& verify_opts) {
    if (!space.has_metric()) {
        throw std::invalid_argument("ordinary-metric solve needs a base metric");
    }
    if (f.dimension() != space.dimension) {
        throw std::invalid_argument("map dimension does not match the space");
    }
    validate_config(cfg, space.dimension);

    // sample the scale condition rho*d(fu,fv) <= zeta(rho)*d(u,v)
    SampleOptions opts = verify_opts;
    if (!opts.box) opts.box = SampleBox::centered(space.dimension);
    if (opts.pair_samples < 1) throw std::invalid_argument("pair_samples must be >= 1");
    if (opts.rho_grid.empty()) throw std::invalid_argument("rho grid must be nonempty");

    constexpr Scalar kTol = 1e-12;
    Rng rng(opts.seed);
    for (int i = 0; i < opts.pair_samples; ++i) {
        const Vector u = opts.box->sample(rng);
        const Vector v = opts.box->sample(rng);
        const Scalar d_mapped = space.distance(f.apply(u), f.apply(v));
        const Scalar d_plain = space.distance(u, v);
        for (Scalar rho : opts.rho_grid) {
            const Scalar lhs = rho * d_mapped;
            const Scalar rhs = zeta.apply(rho) * d_plain;
            if (lhs > rhs + kTol) {
                Certificate cert;
                cert.status = SolveStatus::HypothesisFailed;
                cert.rho_ref = cfg.rho_ref;
                cert.tol = cfg.tol;
                cert.hypothesis_counterexample = ContractionCounterexample{
                    u, v, rho, lhs, rhs, static_cast<std::size_t>(i)};
                return cert;
            }
        }
    }

    const FuzzyMetric fm = standard_from_metric(space);
    Certificate cert = solve_single(fm, f, cfg);
    cert.metric_steps.reserve(cert.trace.theta_steps.size());
    for (std::size_t n = 0; n + 1 < cert.trace.iterates.size(); ++n) {
        cert.metric_steps.push_back(
            space.distance(cert.trace.iterates[n], cert.trace.iterates[n + 1]));
    }
    return cert;
}

Scalar inclusion_residual(const FuzzyMetric& fm, const Vector& x, const MultiMap& S,
                          Scalar rho) {
    if (!(rho > 0.0)) throw std::domain_error("inclusion_residual needs rho > 0");
    return 1.0 - point_to_set(fm, x, S.image(x), rho).value;
}

std::string certificate_report(const Certificate& cert) {
    std::ostringstream os;
    os << "certificate\n";
    os << "  status: " << to_string(cert.status) << "\n";
    if (cert.fixed_point) {
        os << "  fixed point: (" << format_vector(*cert.fixed_point) << ")\n";
    }
    if (cert.hypothesis_counterexample) {
        const auto& cex = *cert.hypothesis_counterexample;
        os << "  counterexample: u=(" << format_vector(cex.u) << ") v=("
           << format_vector(cex.v) << ") rho=" << format_scalar(cex.rho)
           << " lhs=" << format_scalar(cex.lhs) << " rhs=" << format_scalar(cex.rhs)
           << "\n";
        return os.str();
    }
    os << "  iterations: " << cert.trace.theta_steps.size() << "\n";
    os << "  final residual: " << format_scalar(cert.final_residual) << "\n";
    os << "  rho_ref: " << format_scalar_brief(cert.rho_ref)
       << "  tol: " << format_scalar_brief(cert.tol) << "\n";
    if (cert.selection_scale) {
        os << "  selection scale: " << format_scalar(*cert.selection_scale) << "\n";
    }
    if (!cert.g_cauchy.empty()) {
        os << "  tail diagnostic (eps=" << format_scalar_brief(cert.g_cauchy_eps) << "):";
        for (const auto& d : cert.g_cauchy) {
            os << " p=" << d.p << (d.certified ? " from N=" + std::to_string(d.onset)
                                               : std::string(" not certified"));
            os << ";";
        }
        os << "\n";
    }
    if (cert.uniqueness) {
        os << "  uniqueness: " << cert.uniqueness->starts.size() << " extra starts, "
           << (cert.uniqueness->all_converged ? "all converged" : "some did not converge")
           << ", max endpoint spread "
           << format_scalar(cert.uniqueness->max_pairwise_distance) << "\n";
    }
    return os.str();
}

std::string certificate_kv(const Certificate& cert) {
    std::ostringstream os;
    os << "status = " << to_string(cert.status) << "\n";
    os << "iterations = " << cert.trace.theta_steps.size() << "\n";
    if (cert.fixed_point) {
        os << "fixed_point = " << format_vector(*cert.fixed_point, ",") << "\n";
    }
    os << "final_residual = " << format_scalar(cert.final_residual) << "\n";
    os << "rho_ref = " << format_scalar(cert.rho_ref) << "\n";
    os << "tol = " << format_scalar(cert.tol) << "\n";
    if (cert.selection_scale) {
        os << "selection_scale = " << format_scalar(*cert.selection_scale) << "\n";
    }
    for (const auto& d : cert.g_cauchy) {
        os << "g_cauchy_p" << d.p << "_certified = " << (d.certified ? 1 : 0) << "\n";
        os << "g_cauchy_p" << d.p << "_onset = " << d.onset << "\n";
    }
    if (!cert.g_cauchy.empty()) {
        os << "g_cauchy_eps = " << format_scalar(cert.g_cauchy_eps) << "\n";
    }
    if (cert.uniqueness) {
        os << "uniqueness_starts = " << cert.uniqueness->starts.size() << "\n";
        os << "uniqueness_all_converged = " << (cert.uniqueness->all_converged ? 1 : 0)
           << "\n";
        os << "uniqueness_max_spread = "
           << format_scalar(cert.uniqueness->max_pairwise_distance) << "\n";
    }
    if (cert.hypothesis_counterexample) {
        const auto& cex = *cert.hypothesis_counterexample;
        os << "counterexample_u = " << format_vector(cex.u, ",") << "\n";
        os << "counterexample_v = " << format_vector(cex.v, ",") << "\n";
        os << "counterexample_rho = " << format_scalar(cex.rho) << "\n";
        os << "counterexample_lhs = " << format_scalar(cex.lhs) << "\n";
        os << "counterexample_rhs = " << format_scalar(cex.rhs) << "\n";
    }
    return os.str();
}

void write_trace_csv(std::ostream& os, const Certificate& cert, bool with_g_cauchy_flags) {
    if (cert.trace.iterates.empty()) {
        os << "n\n";
        return;
    }
    const Index dim = cert.trace.iterates.front().size();
    const bool multi = !cert.trace.selected_branches.empty();

    os << "n";
    for (Index d = 0; d < dim; ++d) os << ",x" << d;
    os << ",theta_step";
    if (multi) os << ",branch_index";
    if (with_g_cauchy_flags) {
        for (const auto& d : cert.g_cauchy) os << ",g_cauchy_p" << d.p;
    }
    os << "\n";

    for (std::size_t n = 0; n < cert.trace.iterates.size(); ++n) {
        os << n;
        for (Index d = 0; d < dim; ++d) {
            os << ',' << format_scalar(cert.trace.iterates[n][d]);
        }
        os << ',';
        if (n < cert.trace.theta_steps.size()) {
            os << format_scalar(cert.trace.theta_steps[n]);
        }
        if (multi) {
            os << ',';
            if (n < cert.trace.selected_branches.size()) {
                os << cert.trace.selected_branches[n];
            }
        }
        if (with_g_cauchy_flags) {
            for (const auto& d : cert.g_cauchy) {
                os << ',' << ((d.certified && n >= d.onset) ? 1 : 0);
            }
        }
        os << '\n';
    }
}

}  // namespace ffp

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

#include "ffp/runner.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "ffp/fuzzy_metric.hpp"
#include "ffp/solver.hpp"

namespace ffp {

namespace {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << contents;
    if (!out) throw IoError("failed writing " + path.string());
}

std::uint64_t resolve_seed(const ProblemSpec& spec, const RunOptions& opt,
                           std::string& source) {
    if (opt.seed) {
        source = "flag";
        return *opt.seed;
    }
    if (spec.seed) {
        source = "file";
        return *spec.seed;
    }
    if (opt.env_seed) {
        source = "env";
        return *opt.env_seed;
    }
    source = "default";
    return kDefaultSeed;
}

constexpr int kVerifyGridResolution = 100;

std::string describe(const TNormAxiomReport& report) {
    std::ostringstream os;
    if (report.all_passed()) {
        os << "pass (" << report.axioms.size() << " axioms, grid "
           << report.grid_resolution + 1 << " points)";
        return os.str();
    }
    for (const auto& axiom : report.axioms) {
        if (axiom.passed) continue;
        os << "FAIL " << axiom.name;
        if (axiom.counterexample) {
            const auto& cex = *axiom.counterexample;
            os << " at a=" << format_scalar(cex.a) << " b=" << format_scalar(cex.b)
               << " c=" << format_scalar(cex.c) << " lhs=" << format_scalar(cex.lhs)
               << " rhs=" << format_scalar(cex.rhs);
        }
        break;
    }
    return os.str();
}

std::string describe(const PiVerdict& verdict) {
    std::ostringstream os;
    if (verdict.member) {
        os << "member (" << verdict.rho_samples.size() << " samples, eps "
           << format_scalar_brief(verdict.eps_pi) << ", n_max " << verdict.n_max << ")";
    } else {
        os << "NOT a member";
        if (verdict.witness) {
            os << ": orbit from rho=" << format_scalar(verdict.witness->rho)
               << " at value " << format_scalar(verdict.witness->value) << " after "
               << verdict.witness->n << " steps";
        }
    }
    return os.str();
}

std::string describe(const VerificationReport& report) {
    std::ostringstream os;
    if (report.passed) {
        os << "pass (" << report.pair_samples << " pairs x " << report.rho_grid.size()
           << " scales, seed " << report.seed << ", tolerance "
           << format_scalar_brief(report.tolerance) << ")";
    } else {
        os << "FAIL";
        if (report.counterexample) {
            const auto& cex = *report.counterexample;
            os << " at sample " << cex.sample_index << ": u=(" << format_vector(cex.u)
               << ") v=(" << format_vector(cex.v) << ") rho=" << format_scalar(cex.rho)
               << " lhs=" << format_scalar(cex.lhs) << " rhs=" << format_scalar(cex.rhs);
        }
    }
    return os.str();
}

struct VerificationOutcome {
    bool all_passed = true;
    std::string report_text;
    std::optional<ContractionCounterexample> counterexample;
};

VerificationOutcome run_verification(const ProblemSpec& spec, std::uint64_t seed) {
    VerificationOutcome outcome;
    std::ostringstream os;

    const TNorm tnorm = TNorm::from_kind(spec.tnorm);
    const auto tnorm_report = check_tnorm_axioms(tnorm, kVerifyGridResolution);
    os << "t-norm '" << tnorm.name() << "' axioms: " << describe(tnorm_report) << "\n";
    outcome.all_passed = outcome.all_passed && tnorm_report.all_passed();

    const ZetaFn zeta = ZetaFn::linear(spec.zeta_k);
    const auto pi_samples = default_pi_rho_samples();
    const auto pi = probe_pi_membership(zeta, pi_samples);
    os << "descent probe for zeta (linear, k=" << format_scalar_brief(spec.zeta_k)
       << "): " << describe(pi) << "\n";
    outcome.all_passed = outcome.all_passed && pi.member;

    const PointSpace space = PointSpace::euclidean(spec.dim);
    const FuzzyMetric fm = standard_from_metric(space, tnorm);

    SampleOptions opts;
    opts.pair_samples = spec.pair_samples;
    opts.rho_grid = spec.rho_grid;
    opts.seed = seed;
    if (spec.box_min) {
        opts.box = SampleBox{*spec.box_min, *spec.box_max};
    }

    if (spec.map) {
        const SingleMap f = SingleMap::affine(spec.map->matrix, spec.map->offset);
        const auto report = verify_single_contraction(fm, f, zeta, opts);
        os << "single-valued contraction check: " << describe(report) << "\n";
        outcome.all_passed = outcome.all_passed && report.passed;
        if (!report.passed) outcome.counterexample = report.counterexample;
    } else {
        std::vector<SingleMap> branches;
        for (const auto& b : spec.multimap) {
            branches.push_back(SingleMap::affine(b.matrix, b.offset));
        }
        const MultiMap S(std::move(branches));
        const auto report = verify_multi_contraction(fm, S, zeta, opts);
        os << "multi-valued contraction check: " << describe(report) << "\n";
        outcome.all_passed = outcome.all_passed && report.passed;
        if (!report.passed) outcome.counterexample = report.counterexample;
    }

    outcome.report_text = os.str();
    return outcome;
}

int run_problem_spec(Subcommand cmd, ProblemSpec spec, const std::string& label,
                     const RunOptions& opt) {
    if (opt.tol) {
        spec.tol = *opt.tol;
        if (!(spec.tol > 0.0 && spec.tol < 1.0)) {
            throw ValidationError("tol", "must lie in (0,1)");
        }
    }
    if (opt.max_iter) {
        spec.max_iter = *opt.max_iter;
        if (spec.max_iter < 1) throw ValidationError("max_iter", "must be >= 1");
    }
    std::string seed_source;
    const std::uint64_t seed = resolve_seed(spec, opt, seed_source);

    std::ostringstream report;
    report << "ffp " << (cmd == Subcommand::Verify ? "verify" : cmd == Subcommand::Solve ? "solve" : "trace")
           << ": " << label << "\n";
    report << "seed: " << seed << " (" << seed_source << ")\n\n";

    const VerificationOutcome verification =
        opt.skip_verify && cmd != Subcommand::Verify
            ? VerificationOutcome{true, "verification skipped (--skip-verify)\n", {}}
            : run_verification(spec, seed);
    report << verification.report_text;

    if (cmd == Subcommand::Verify) {
        report << "\nresult: " << (verification.all_passed ? "all-pass" : "counterexample found")
               << "\n";
        write_file(opt.output_dir / "report.txt", report.str());
        std::cout << report.str();
        return verification.all_passed ? kExitOk : kExitCounterexample;
    }

    // solve / trace
    SolverConfig cfg;
    cfg.x0 = spec.x0;
    cfg.tol = spec.tol;
    cfg.max_iter = spec.max_iter;
    cfg.rho_ref = spec.rho_ref;
    cfg.uniqueness_starts = spec.uniqueness_starts;
    cfg.seed = seed;
    if (spec.box_min) cfg.start_box = SampleBox{*spec.box_min, *spec.box_max};

    Certificate cert;
    if (!verification.all_passed) {
        cert.status = SolveStatus::HypothesisFailed;
        cert.rho_ref = spec.rho_ref;
        cert.tol = spec.tol;
        cert.hypothesis_counterexample = verification.counterexample;
    } else {
        const PointSpace space = PointSpace::euclidean(spec.dim);
        const FuzzyMetric fm = standard_from_metric(space, TNorm::from_kind(spec.tnorm));
        const ZetaFn zeta = ZetaFn::linear(spec.zeta_k);
        if (spec.map) {
            const SingleMap f = SingleMap::affine(spec.map->matrix, spec.map->offset);
            cert = solve_single(fm, f, cfg);
        } else {
            std::vector<SingleMap> branches;
            for (const auto& b : spec.multimap) {
                branches.push_back(SingleMap::affine(b.matrix, b.offset));
            }
            cert = solve_multi(fm, MultiMap(std::move(branches)), zeta, cfg);
        }
    }

    report << "\n" << certificate_report(cert);
    write_file(opt.output_dir / "report.txt", report.str());
    write_file(opt.output_dir / "certificate.kv", certificate_kv(cert));
    {
        std::ostringstream csv;
        write_trace_csv(csv, cert, cmd == Subcommand::Trace);
        write_file(opt.output_dir / "trace.csv", csv.str());
    }
    std::cout << report.str();

    switch (cert.status) {
        case SolveStatus::Converged: return kExitOk;
        case SolveStatus::MaxIterExceeded: return kExitMaxIter;
        case SolveStatus::HypothesisFailed: return kExitCounterexample;
    }
    return kExitCounterexample;
}

int run_sequence_spec(Subcommand cmd, const SequenceSpec& spec, const std::string& label,
                      const RunOptions& opt) {
    (void)cmd;  // every subcommand produces the same diagnostic for sequences
    if (spec.terms < 2) throw ValidationError("sequence.terms", "must be >= 2");

    std::vector<Vector> seq;
    seq.reserve(static_cast<std::size_t>(spec.terms));
    Scalar acc = 0;
    for (int k = 1; k <= spec.terms; ++k) {
        acc += 1.0 / k;
        seq.push_back(Vector::Constant(1, acc));
    }

    const FuzzyMetric fm = standard_from_metric(PointSpace::euclidean(1));
    const SequenceVerdict verdict =
        classify_sequence(fm, seq, spec.eps, spec.rho, spec.p_max);

    std::ostringstream report;
    report << "ffp sequence diagnostic: " << label << "\n";
    report << "terms: " << spec.terms << "  eps: " << format_scalar_brief(spec.eps)
           << "  rho: " << format_scalar_brief(spec.rho) << "  p_max: " << spec.p_max << "\n\n";
    report << "classification: " << to_string(verdict.classification) << "\n";
    report << "cauchy: "
           << (verdict.cauchy.certified
                   ? "certified from N=" + std::to_string(verdict.cauchy.onset)
                   : "fails")
           << "\n";
    if (verdict.cauchy.violation) {
        report << "cauchy witness: indices (" << verdict.cauchy.violation->first << ", "
               << verdict.cauchy.violation->second << ")\n";
    }
    report << "g-cauchy: "
           << (verdict.g_cauchy.certified
                   ? "certified from N=" + std::to_string(verdict.g_cauchy.onset)
                   : "fails")
           << "\n";
    if (verdict.g_cauchy.violation) {
        report << "g-cauchy witness: indices (" << verdict.g_cauchy.violation->first
               << ", " << verdict.g_cauchy.violation->second << ")\n";
    }

    write_file(opt.output_dir / "report.txt", report.str());
    {
        std::ostringstream csv;
        write_sequence_csv(csv, fm, seq, verdict);
        write_file(opt.output_dir / "trace.csv", csv.str());
    }
    std::cout << report.str();
    return kExitOk;
}

}  // namespace

int run(Subcommand cmd, const Problem& problem, const std::string& label,
        const RunOptions& options) {
    try {
        std::filesystem::create_directories(options.output_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    try {
        if (std::holds_alternative<ProblemSpec>(problem)) {
            return run_problem_spec(cmd, std::get<ProblemSpec>(problem), label, options);
        }
        return run_sequence_spec(cmd, std::get<SequenceSpec>(problem), label, options);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCounterexample;
    }
}

}  // namespace ffp

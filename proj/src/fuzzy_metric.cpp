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

#include "ffp/fuzzy_metric.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace ffp {

namespace {

constexpr Scalar kEqTol = 1e-12;

void require_positive_rho(Scalar rho) {
    if (!(rho > 0.0)) {
        throw std::domain_error("fuzzy metric scale must be positive, got " +
                                format_scalar(rho));
    }
}

}  // namespace

PointSpace PointSpace::euclidean(Index dim) {
    if (dim < 1) throw std::invalid_argument("point space dimension must be >= 1");
    PointSpace space;
    space.dimension = dim;
    space.base_metric = [](const Vector& u, const Vector& v) { return (u - v).norm(); };
    return space;
}

Scalar PointSpace::distance(const Vector& u, const Vector& v) const {
    if (!base_metric) throw std::logic_error("point space has no base metric");
    return base_metric(u, v);
}

FuzzyMetric::FuzzyMetric(PointSpace space, TNorm tnorm, Evaluator evaluator, bool standard)
    : space_(std::move(space)),
      tnorm_(std::move(tnorm)),
      evaluator_(std::move(evaluator)),
      standard_(standard) {}

FuzzyMetric FuzzyMetric::custom(PointSpace space, TNorm tnorm, Evaluator evaluator) {
    if (!evaluator) throw std::invalid_argument("fuzzy metric needs an evaluator");
    return FuzzyMetric(std::move(space), std::move(tnorm), std::move(evaluator), false);
}

Scalar FuzzyMetric::eval(const Vector& u, const Vector& v, Scalar rho) const {
    require_positive_rho(rho);
    return evaluator_(u, v, rho);
}

FuzzyMetric standard_from_metric(const PointSpace& space, TNorm tnorm) {
    if (!space.has_metric()) {
        throw std::invalid_argument("standard fuzzy metric needs a base metric");
    }
    MetricFn d = space.base_metric;
    auto evaluator = [d](const Vector& u, const Vector& v, Scalar rho) {
        return rho / (rho + d(u, v));
    };
    return FuzzyMetric(space, std::move(tnorm), std::move(evaluator), true);
}

bool FmAxiomReport::all_passed() const {
    return std::all_of(axioms.begin(), axioms.end(),
                       [](const FmAxiomResult& r) { return r.passed; });
}

const FmAxiomResult* FmAxiomReport::find(std::string_view axiom_name) const {
    for (const auto& axiom : axioms) {
        if (axiom.name == axiom_name) return &axiom;
    }
    return nullptr;
}

FmAxiomReport check_fm_axioms(const FuzzyMetric& fm, int sample_count,
                              std::span<const Scalar> rho_grid, std::uint64_t seed,
                              const std::optional<SampleBox>& box) {
    if (sample_count < 1) throw std::invalid_argument("sample_count must be >= 1");
    if (rho_grid.empty()) throw std::invalid_argument("rho grid must be nonempty");
    for (Scalar rho : rho_grid) require_positive_rho(rho);

    const SampleBox draw_box =
        box.value_or(SampleBox::centered(fm.space().dimension));

    FmAxiomReport report;
    report.sample_count = sample_count;
    report.seed = seed;
    report.rho_grid.assign(rho_grid.begin(), rho_grid.end());
    std::sort(report.rho_grid.begin(), report.rho_grid.end());

    struct Triple {
        Vector u, v, z;
    };
    std::vector<Triple> samples;
    samples.reserve(static_cast<std::size_t>(sample_count));
    Rng rng(seed);
    for (int i = 0; i < sample_count; ++i) {
        Triple t;
        t.u = draw_box.sample(rng);
        t.v = draw_box.sample(rng);
        t.z = draw_box.sample(rng);
        samples.push_back(std::move(t));
    }

    auto add = [&report](std::string name, std::optional<FmCounterexample> cex) {
        report.axioms.push_back({std::move(name), !cex.has_value(), std::move(cex)});
    };

    // positivity: values stay in (0,1]
    {
        std::optional<FmCounterexample> cex;
        for (std::size_t i = 0; i < samples.size() && !cex; ++i) {
            for (Scalar rho : report.rho_grid) {
                const Scalar th = fm.eval(samples[i].u, samples[i].v, rho);
                if (!(th > 0.0 && th <= 1.0)) {
                    cex = FmCounterexample{samples[i].u, samples[i].v, Vector(),
                                           rho,          0,            th,
                                           0,            i};
                    break;
                }
            }
        }
        add("positivity", cex);
    }

    // identity: value 1 exactly when the points coincide
    {
        std::optional<FmCounterexample> cex;
        for (std::size_t i = 0; i < samples.size() && !cex; ++i) {
            for (Scalar rho : report.rho_grid) {
                const Scalar self = fm.eval(samples[i].u, samples[i].u, rho);
                if (std::abs(self - 1.0) > kEqTol) {
                    cex = FmCounterexample{samples[i].u, samples[i].u, Vector(),
                                           rho,          0,            self,
                                           1.0,          i};
                    break;
                }
                if (!exactly_equal(samples[i].u, samples[i].v)) {
                    const Scalar cross = fm.eval(samples[i].u, samples[i].v, rho);
                    if (cross >= 1.0) {
                        cex = FmCounterexample{samples[i].u, samples[i].v, Vector(),
                                               rho,          0,            cross,
                                               1.0,          i};
                        break;
                    }
                }
            }
        }
        add("identity", cex);
    }

    // symmetry, required exactly
    {
        std::optional<FmCounterexample> cex;
        for (std::size_t i = 0; i < samples.size() && !cex; ++i) {
            for (Scalar rho : report.rho_grid) {
                const Scalar uv = fm.eval(samples[i].u, samples[i].v, rho);
                const Scalar vu = fm.eval(samples[i].v, samples[i].u, rho);
                if (uv != vu) {
                    cex = FmCounterexample{samples[i].u, samples[i].v, Vector(),
                                           rho,          0,            uv,
                                           vu,           i};
                    break;
                }
            }
        }
        add("symmetry", cex);
    }

    // triangle: eval(u,z,rho+s) >= tnorm(eval(u,v,rho), eval(v,z,s))
    {
        std::optional<FmCounterexample> cex;
        const TNorm& tn = fm.tnorm();
        for (std::size_t i = 0; i < samples.size() && !cex; ++i) {
            for (Scalar rho : report.rho_grid) {
                for (Scalar s : report.rho_grid) {
                    const Scalar lhs = fm.eval(samples[i].u, samples[i].z, rho + s);
                    const Scalar a = fm.eval(samples[i].u, samples[i].v, rho);
                    const Scalar b = fm.eval(samples[i].v, samples[i].z, s);
                    const Scalar rhs = tn.apply(std::clamp(a, 0.0, 1.0),
                                                std::clamp(b, 0.0, 1.0));
                    if (lhs < rhs - kEqTol) {
                        cex = FmCounterexample{samples[i].u, samples[i].v, samples[i].z,
                                               rho,          s,            lhs,
                                               rhs,          i};
                        break;
                    }
                }
                if (cex) break;
            }
        }
        add("triangle", cex);
    }

    // monotone continuity in rho: non-decreasing across the grid and under
    // a small forward difference
    {
        std::optional<FmCounterexample> cex;
        constexpr Scalar kStep = 1e-6;
        for (std::size_t i = 0; i < samples.size() && !cex; ++i) {
            for (std::size_t j = 0; j + 1 < report.rho_grid.size(); ++j) {
                const Scalar lo = fm.eval(samples[i].u, samples[i].v, report.rho_grid[j]);
                const Scalar hi =
                    fm.eval(samples[i].u, samples[i].v, report.rho_grid[j + 1]);
                if (lo > hi + kEqTol) {
                    cex = FmCounterexample{samples[i].u,           samples[i].v, Vector(),
                                           report.rho_grid[j],     0,            lo,
                                           hi,                     i};
                    break;
                }
            }
            if (cex) break;
            for (Scalar rho : report.rho_grid) {
                const Scalar at = fm.eval(samples[i].u, samples[i].v, rho);
                const Scalar ahead = fm.eval(samples[i].u, samples[i].v, rho + kStep);
                if (ahead < at - kEqTol) {
                    cex = FmCounterexample{samples[i].u, samples[i].v, Vector(),
                                           rho,          0,            ahead,
                                           at,           i};
                    break;
                }
            }
        }
        add("rho-monotonicity", cex);
    }

    return report;
}

std::string to_string(SequenceClass c) {
    switch (c) {
        case SequenceClass::ConvergentTo: return "convergent-to";
        case SequenceClass::Cauchy: return "cauchy";
        case SequenceClass::GCauchy: return "g-cauchy";
        case SequenceClass::NoneDetected: return "none-detected";
    }
    return "unknown";
}

namespace {

void require_sequence(std::span<const Vector> seq) {
    if (seq.size() < 2) throw std::invalid_argument("sequence needs at least 2 points");
}

std::size_t onset_cap_for(std::size_t len) {
    // A certificate must cover the trailing half of the prefix and leave at
    // least one real pair to check.
    return std::min(len / 2, len - 2);
}

}  // namespace

SequenceScan scan_g_cauchy(const FuzzyMetric& fm, std::span<const Vector> seq,
                           Scalar eps, Scalar rho, int p) {
    require_sequence(seq);
    if (p < 1) throw std::invalid_argument("gap p must be >= 1");
    const std::size_t len = seq.size();
    const Scalar threshold = 1.0 - eps;
    const std::size_t cap = onset_cap_for(len);

    SequenceScan scan;
    if (static_cast<std::size_t>(p) >= len) {
        // no windows at this gap; vacuously clean
        scan.certified = true;
        scan.onset = 0;
        return scan;
    }
    // largest index whose window violates the condition
    for (std::size_t n = len - static_cast<std::size_t>(p); n-- > 0;) {
        if (fm.eval(seq[n], seq[n + static_cast<std::size_t>(p)], rho) <= threshold) {
            scan.onset = n + 1;
            scan.certified = scan.onset <= cap;
            if (!scan.certified) {
                scan.violation = std::make_pair(n, n + static_cast<std::size_t>(p));
            }
            return scan;
        }
    }
    scan.certified = true;
    scan.onset = 0;
    return scan;
}

SequenceScan scan_cauchy(const FuzzyMetric& fm, std::span<const Vector> seq,
                         Scalar eps, Scalar rho) {
    require_sequence(seq);
    const std::size_t len = seq.size();
    const Scalar threshold = 1.0 - eps;
    const std::size_t cap = onset_cap_for(len);

    SequenceScan scan;
    // Scan from the top: the first violating n found is the largest one, and
    // every later index has had its full pair range checked.
    for (std::size_t n = len - 1; n-- > 0;) {
        for (std::size_t m = n + 1; m < len; ++m) {
            if (fm.eval(seq[n], seq[m], rho) <= threshold) {
                scan.onset = n + 1;
                scan.certified = scan.onset <= cap;
                if (!scan.certified) scan.violation = std::make_pair(n, m);
                return scan;
            }
        }
    }
    scan.certified = true;
    scan.onset = 0;
    return scan;
}

SequenceScan scan_convergence(const FuzzyMetric& fm, std::span<const Vector> seq,
                              const Vector& limit, Scalar eps, Scalar rho) {
    require_sequence(seq);
    const std::size_t len = seq.size();
    const Scalar threshold = 1.0 - eps;
    const std::size_t cap = onset_cap_for(len);

    SequenceScan scan;
    for (std::size_t n = len; n-- > 0;) {
        if (fm.eval(seq[n], limit, rho) <= threshold) {
            scan.onset = n + 1;
            scan.certified = scan.onset <= cap;
            if (!scan.certified) scan.violation = std::make_pair(n, n);
            return scan;
        }
    }
    scan.certified = true;
    scan.onset = 0;
    return scan;
}

SequenceVerdict classify_sequence(const FuzzyMetric& fm, std::span<const Vector> seq,
                                  Scalar eps, Scalar rho, int p_max,
                                  const std::optional<Vector>& limit) {
    require_sequence(seq);
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0,1)");
    require_positive_rho(rho);
    if (p_max < 1) throw std::invalid_argument("p_max must be >= 1");

    SequenceVerdict verdict;
    verdict.eps = eps;
    verdict.rho = rho;
    verdict.p_max = p_max;
    verdict.onset_cap = onset_cap_for(seq.size());
    verdict.limit = limit;

    verdict.cauchy = scan_cauchy(fm, seq, eps, rho);

    verdict.g_cauchy_per_p.reserve(static_cast<std::size_t>(p_max));
    bool g_all = true;
    std::size_t g_onset = 0;
    for (int p = 1; p <= p_max; ++p) {
        SequenceScan scan = scan_g_cauchy(fm, seq, eps, rho, p);
        g_all = g_all && scan.certified;
        g_onset = std::max(g_onset, scan.onset);
        if (!scan.certified && scan.violation) {
            if (!verdict.g_cauchy.violation ||
                scan.violation->first > verdict.g_cauchy.violation->first) {
                verdict.g_cauchy.violation = scan.violation;
            }
        }
        verdict.g_cauchy_per_p.push_back(std::move(scan));
    }
    verdict.g_cauchy.certified = g_all;
    verdict.g_cauchy.onset = g_onset;
    if (g_all) verdict.g_cauchy.violation.reset();

    if (limit) {
        verdict.convergent = scan_convergence(fm, seq, *limit, eps, rho);
    }

    if (limit && verdict.convergent.certified) {
        verdict.classification = SequenceClass::ConvergentTo;
    } else if (verdict.cauchy.certified) {
        verdict.classification = SequenceClass::Cauchy;
    } else if (verdict.g_cauchy.certified) {
        verdict.classification = SequenceClass::GCauchy;
    } else {
        verdict.classification = SequenceClass::NoneDetected;
    }
    return verdict;
}

void write_sequence_csv(std::ostream& os, const FuzzyMetric& fm,
                        std::span<const Vector> seq, const SequenceVerdict& verdict) {
    require_sequence(seq);
    const Index dim = seq[0].size();
    os << "n";
    for (Index d = 0; d < dim; ++d) os << ",x" << d;
    os << ",theta_step,cauchy,g_cauchy\n";
    for (std::size_t n = 0; n < seq.size(); ++n) {
        os << n;
        for (Index d = 0; d < dim; ++d) os << ',' << format_scalar(seq[n][d]);
        os << ',';
        if (n + 1 < seq.size()) {
            os << format_scalar(fm.eval(seq[n], seq[n + 1], verdict.rho));
        }
        const int cauchy_flag =
            (verdict.cauchy.certified && n >= verdict.cauchy.onset) ? 1 : 0;
        const int g_flag =
            (verdict.g_cauchy.certified && n >= verdict.g_cauchy.onset) ? 1 : 0;
        os << ',' << cauchy_flag << ',' << g_flag << '\n';
    }
}

}  // namespace ffp

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

#include "ffp/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace ffp {

ZetaFn::ZetaFn(ZetaKind kind, Scalar k, Evaluator evaluator)
    : kind_(kind), k_(k), evaluator_(std::move(evaluator)) {}

ZetaFn ZetaFn::linear(Scalar k) {
    if (!(k > 0.0) || !std::isfinite(k)) {
        throw std::invalid_argument("linear zeta needs k > 0");
    }
    return ZetaFn(ZetaKind::Linear, k, [k](Scalar rho) { return k * rho; });
}

ZetaFn ZetaFn::custom(Evaluator evaluator) {
    if (!evaluator) throw std::invalid_argument("custom zeta needs an evaluator");
    return ZetaFn(ZetaKind::Custom, 0, std::move(evaluator));
}

Scalar ZetaFn::apply(Scalar rho) const {
    if (!(rho > 0.0)) {
        throw std::domain_error("zeta is defined on positive scales, got " +
                                format_scalar(rho));
    }
    const Scalar value = evaluator_(rho);
    if (!(value > 0.0)) {
        throw std::range_error("zeta produced a non-positive value " +
                               format_scalar(value) + " at rho " + format_scalar(rho));
    }
    return value;
}

std::vector<Scalar> default_pi_rho_samples() {
    std::vector<Scalar> samples(13);
    for (int i = 0; i < 13; ++i) {
        samples[static_cast<std::size_t>(i)] = std::pow(10.0, -3.0 + 0.5 * i);
    }
    return samples;
}

PiVerdict probe_pi_membership(const ZetaFn& zeta, std::span<const Scalar> rho_samples,
                              Scalar eps_pi, int n_max) {
    if (rho_samples.empty()) throw std::invalid_argument("pi probe needs samples");
    if (!(eps_pi > 0.0)) throw std::invalid_argument("pi probe needs eps_pi > 0");
    if (n_max < 1) throw std::invalid_argument("pi probe needs n_max >= 1");

    PiVerdict verdict;
    verdict.rho_samples.assign(rho_samples.begin(), rho_samples.end());
    verdict.eps_pi = eps_pi;
    verdict.n_max = n_max;
    verdict.divergence_cap = kPiDivergenceCap;

    std::optional<PiWitness> stalled;
    for (Scalar rho : verdict.rho_samples) {
        Scalar value = rho;
        bool descended = false;
        for (int n = 1; n <= n_max; ++n) {
            value = zeta.apply(value);
            if (value > kPiDivergenceCap) {
                // a diverging orbit settles the probe on its own
                verdict.member = false;
                verdict.witness = PiWitness{rho, n, value};
                return verdict;
            }
            if (value < eps_pi) {
                descended = true;
                break;
            }
        }
        if (!descended && !stalled) {
            stalled = PiWitness{rho, n_max, value};
        }
    }

    if (stalled) {
        verdict.member = false;
        verdict.witness = stalled;
    } else {
        verdict.member = true;
    }
    return verdict;
}

SingleMap::SingleMap(Index dimension, bool affine, Matrix m, Vector offset,
                     Evaluator evaluator)
    : dimension_(dimension),
      affine_(affine),
      matrix_(std::move(m)),
      offset_(std::move(offset)),
      evaluator_(std::move(evaluator)) {}

SingleMap SingleMap::affine(Matrix m, Vector offset) {
    if (m.rows() != m.cols()) throw std::invalid_argument("affine map needs a square matrix");
    if (offset.size() != m.rows()) {
        throw std::invalid_argument("affine map offset size must match the matrix");
    }
    const Index dim = m.rows();
    return SingleMap(dim, true, std::move(m), std::move(offset), nullptr);
}

SingleMap SingleMap::custom(Index dimension, Evaluator evaluator) {
    if (dimension < 1) throw std::invalid_argument("map dimension must be >= 1");
    if (!evaluator) throw std::invalid_argument("custom map needs an evaluator");
    return SingleMap(dimension, false, Matrix(), Vector(), std::move(evaluator));
}

Vector SingleMap::apply(const Vector& u) const {
    if (u.size() != dimension_) {
        throw std::invalid_argument("map applied to a point of the wrong dimension");
    }
    if (affine_) return matrix_ * u + offset_;
    return evaluator_(u);
}

MultiMap::MultiMap(std::vector<SingleMap> branches) : branches_(std::move(branches)) {
    if (branches_.empty()) throw std::invalid_argument("multimap needs at least one branch");
    const Index dim = branches_.front().dimension();
    for (const auto& b : branches_) {
        if (b.dimension() != dim) {
            throw std::invalid_argument("multimap branches must share a dimension");
        }
    }
}

FiniteCompactSet MultiMap::image(const Vector& u) const {
    std::vector<Vector> pts;
    pts.reserve(branches_.size());
    for (const auto& b : branches_) pts.push_back(b.apply(u));
    return FiniteCompactSet(std::move(pts));
}

MultiMap::BranchImage MultiMap::image_with_branches(const Vector& u) const {
    std::vector<Vector> pts;
    std::vector<int> owners;
    for (std::size_t b = 0; b < branches_.size(); ++b) {
        Vector p = branches_[b].apply(u);
        const bool duplicate = std::any_of(
            pts.begin(), pts.end(), [&p](const Vector& q) { return exactly_equal(p, q); });
        if (!duplicate) {
            pts.push_back(std::move(p));
            owners.push_back(static_cast<int>(b));
        }
    }
    return BranchImage{FiniteCompactSet(std::move(pts)), std::move(owners)};
}

std::vector<Scalar> default_rho_grid() { return {0.01, 0.1, 1.0, 10.0, 100.0}; }

namespace {

struct ResolvedSampling {
    SampleBox box;
    std::vector<Scalar> rho_grid;
};

ResolvedSampling resolve(const FuzzyMetric& fm, const SampleOptions& opts) {
    if (opts.pair_samples < 1) throw std::invalid_argument("pair_samples must be >= 1");
    if (opts.rho_grid.empty()) throw std::invalid_argument("rho grid must be nonempty");
    for (Scalar rho : opts.rho_grid) {
        if (!(rho > 0.0)) throw std::invalid_argument("rho grid values must be positive");
    }
    ResolvedSampling r;
    r.box = opts.box.value_or(SampleBox::centered(fm.space().dimension));
    r.rho_grid = opts.rho_grid;
    return r;
}

template <typename Lhs>
VerificationReport verify_with(const FuzzyMetric& fm, const SampleOptions& opts,
                               Lhs&& lhs_at) {
    const ResolvedSampling sampling = resolve(fm, opts);

    VerificationReport report;
    report.pair_samples = opts.pair_samples;
    report.rho_grid = sampling.rho_grid;
    report.seed = opts.seed;
    report.box = sampling.box;

    Rng rng(opts.seed);
    for (int i = 0; i < opts.pair_samples; ++i) {
        const Vector u = sampling.box.sample(rng);
        const Vector v = sampling.box.sample(rng);
        for (Scalar rho : sampling.rho_grid) {
            const Scalar lhs = lhs_at(u, v, rho);
            const Scalar rhs = fm.eval(u, v, rho);
            if (lhs < rhs - report.tolerance) {
                report.passed = false;
                report.counterexample = ContractionCounterexample{
                    u, v, rho, lhs, rhs, static_cast<std::size_t>(i)};
                return report;
            }
        }
    }
    return report;
}

}  // namespace

VerificationReport verify_single_contraction(const FuzzyMetric& fm, const SingleMap& f,
                                             const ZetaFn& zeta,
                                             const SampleOptions& opts) {
    return verify_with(fm, opts, [&](const Vector& u, const Vector& v, Scalar rho) {
        return fm.eval(f.apply(u), f.apply(v), zeta.apply(rho));
    });
}

VerificationReport verify_multi_contraction(const FuzzyMetric& fm, const MultiMap& S,
                                            const ZetaFn& zeta,
                                            const SampleOptions& opts) {
    return verify_with(fm, opts, [&](const Vector& u, const Vector& v, Scalar rho) {
        return hausdorff_eval(fm, S.image(u), S.image(v), zeta.apply(rho));
    });
}

}  // namespace ffp

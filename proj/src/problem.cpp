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

#include "ffp/problem.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace ffp {

namespace {

bool matrix_equal(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            if (a(i, j) != b(i, j)) return false;
        }
    }
    return true;
}

std::string trim(std::string_view s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return std::string(s.substr(begin, end - begin));
}

std::vector<std::string> split(const std::string& s, char delim) {
    std::vector<std::string> parts;
    std::string current;
    for (char c : s) {
        if (c == delim) {
            parts.push_back(trim(current));
            current.clear();
        } else {
            current += c;
        }
    }
    parts.push_back(trim(current));
    return parts;
}

struct RawValue {
    std::string value;
    int line = 0;
};

// section -> key -> value, with line tracking for error messages
using RawSections = std::map<std::string, std::map<std::string, RawValue>>;

Scalar parse_scalar_at(const std::string& text, int line, const std::string& key) {
    const std::string t = trim(text);
    if (t.empty()) throw ParseError(line, "empty value for '" + key + "'");
    Scalar value = 0;
    const char* begin = t.data();
    const char* end = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw ParseError(line, "expected a number for '" + key + "', got '" + t + "'");
    }
    return value;
}

long long parse_int_at(const std::string& text, int line, const std::string& key) {
    const std::string t = trim(text);
    long long value = 0;
    const char* begin = t.data();
    const char* end = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw ParseError(line, "expected an integer for '" + key + "', got '" + t + "'");
    }
    return value;
}

std::uint64_t parse_u64_at(const std::string& text, int line, const std::string& key) {
    const std::string t = trim(text);
    std::uint64_t value = 0;
    const char* begin = t.data();
    const char* end = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw ParseError(line, "expected an unsigned integer for '" + key + "', got '" +
                                   t + "'");
    }
    return value;
}

Vector parse_vector_at(const std::string& text, int line, const std::string& key) {
    const auto parts = split(text, ',');
    Vector v(static_cast<Index>(parts.size()));
    for (std::size_t i = 0; i < parts.size(); ++i) {
        v[static_cast<Index>(i)] = parse_scalar_at(parts[i], line, key);
    }
    return v;
}

Matrix parse_matrix_at(const std::string& text, int line, const std::string& key) {
    const auto rows = split(text, ';');
    const auto first = split(rows[0], ',');
    Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(first.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto cells = split(rows[r], ',');
        if (cells.size() != first.size()) {
            throw ParseError(line, "ragged matrix rows for '" + key + "'");
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            m(static_cast<Index>(r), static_cast<Index>(c)) =
                parse_scalar_at(cells[c], line, key);
        }
    }
    return m;
}

const std::set<std::string> kKnownSections = {"space",    "tnorm",  "fuzzy", "zeta",
                                              "map",      "multimap", "solver", "sample"};

const std::map<std::string, std::set<std::string>> kKnownKeys = {
    {"space", {"dim", "metric"}},
    {"tnorm", {"kind"}},
    {"fuzzy", {"kind"}},
    {"zeta", {"kind", "k"}},
    {"map", {"matrix", "offset"}},
    {"solver", {"x0", "tol", "max_iter", "rho_ref", "uniqueness_starts"}},
    {"sample", {"pair_samples", "rho_grid", "seed", "box_min", "box_max"}},
};

bool known_multimap_key(const std::string& key) {
    for (const char* prefix : {"matrix_", "offset_"}) {
        const std::string_view pv(prefix);
        if (key.size() > pv.size() && key.compare(0, pv.size(), pv) == 0) {
            const std::string tail = key.substr(pv.size());
            return !tail.empty() &&
                   std::all_of(tail.begin(), tail.end(),
                               [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
        }
    }
    return false;
}

RawSections scan_lines(const std::string& text) {
    RawSections sections;
    std::istringstream in(text);
    std::string raw_line;
    std::string current;
    int line_no = 0;
    std::set<std::string> seen;
    while (std::getline(in, raw_line)) {
        ++line_no;
        // strip comments and whitespace
        const std::size_t hash = raw_line.find('#');
        if (hash != std::string::npos) raw_line.erase(hash);
        const std::string line = trim(raw_line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError(line_no, "unterminated section header");
            const std::string name = trim(line.substr(1, line.size() - 2));
            if (!kKnownSections.count(name)) {
                throw ParseError(line_no, "unknown section [" + name + "]");
            }
            if (seen.count(name)) {
                throw ParseError(line_no, "duplicate section [" + name + "]");
            }
            seen.insert(name);
            current = name;
            sections[name];
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError(line_no, "expected 'key = value', got '" + line + "'");
        }
        if (current.empty()) throw ParseError(line_no, "key before any section");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError(line_no, "empty key");

        if (current == "multimap") {
            if (!known_multimap_key(key)) {
                throw ParseError(line_no, "unknown key '" + key + "' in [multimap]");
            }
        } else if (!kKnownKeys.at(current).count(key)) {
            throw ParseError(line_no, "unknown key '" + key + "' in [" + current + "]");
        }
        auto [it, inserted] = sections[current].emplace(key, RawValue{value, line_no});
        if (!inserted) throw ParseError(line_no, "duplicate key '" + key + "'");
    }
    return sections;
}

void require_finite_vector(const Vector& v, const std::string& field) {
    if (!v.allFinite()) throw ValidationError(field, "entries must be finite");
}

void require_finite_matrix(const Matrix& m, const std::string& field) {
    if (!m.allFinite()) throw ValidationError(field, "entries must be finite");
}

AffineSpec read_affine(const Matrix& matrix, const std::optional<Vector>& offset,
                       Index dim, const std::string& field) {
    if (matrix.rows() != dim || matrix.cols() != dim) {
        throw ValidationError(field, "dimension mismatch: matrix must be " +
                                         std::to_string(dim) + "x" + std::to_string(dim));
    }
    require_finite_matrix(matrix, field);
    AffineSpec affine;
    affine.matrix = matrix;
    affine.offset = offset.value_or(Vector::Zero(dim));
    if (affine.offset.size() != dim) {
        throw ValidationError(field, "dimension mismatch: offset must have " +
                                         std::to_string(dim) + " entries");
    }
    require_finite_vector(affine.offset, field);
    return affine;
}

}  // namespace

bool AffineSpec::operator==(const AffineSpec& other) const {
    return matrix_equal(matrix, other.matrix) && exactly_equal(offset, other.offset);
}

bool ProblemSpec::operator==(const ProblemSpec& other) const {
    auto optional_vector_equal = [](const std::optional<Vector>& a,
                                    const std::optional<Vector>& b) {
        if (a.has_value() != b.has_value()) return false;
        return !a || exactly_equal(*a, *b);
    };
    return dim == other.dim && metric == other.metric && tnorm == other.tnorm &&
           fuzzy_kind == other.fuzzy_kind && zeta_kind == other.zeta_kind &&
           zeta_k == other.zeta_k && map == other.map && multimap == other.multimap &&
           exactly_equal(x0, other.x0) && tol == other.tol && max_iter == other.max_iter &&
           rho_ref == other.rho_ref && uniqueness_starts == other.uniqueness_starts &&
           pair_samples == other.pair_samples && rho_grid == other.rho_grid &&
           seed == other.seed && optional_vector_equal(box_min, other.box_min) &&
           optional_vector_equal(box_max, other.box_max);
}

ProblemSpec parse_problem(const std::string& text) {
    const RawSections sections = scan_lines(text);

    auto section = [&sections](const std::string& name) -> const std::map<std::string, RawValue>* {
        auto it = sections.find(name);
        return it == sections.end() ? nullptr : &it->second;
    };
    auto raw = [](const std::map<std::string, RawValue>* sec,
                  const std::string& key) -> const RawValue* {
        if (!sec) return nullptr;
        auto it = sec->find(key);
        return it == sec->end() ? nullptr : &it->second;
    };

    ProblemSpec spec;

    // [space]
    const auto* space = section("space");
    const auto* dim_value = raw(space, "dim");
    if (!dim_value) throw ValidationError("space.dim", "required");
    const long long dim = parse_int_at(dim_value->value, dim_value->line, "dim");
    if (dim < 1) throw ValidationError("space.dim", "must be >= 1");
    spec.dim = static_cast<Index>(dim);
    if (const auto* metric = raw(space, "metric")) {
        spec.metric = metric->value;
        if (spec.metric != "euclidean") {
            throw ValidationError("space.metric", "unknown metric '" + spec.metric + "'");
        }
    }

    // [tnorm]
    if (const auto* kind = raw(section("tnorm"), "kind")) {
        const auto parsed = tnorm_kind_from_string(kind->value);
        if (!parsed || *parsed == TNormKind::Custom) {
            throw ValidationError("tnorm.kind", "unknown t-norm '" + kind->value + "'");
        }
        spec.tnorm = *parsed;
    }

    // [fuzzy]
    if (const auto* kind = raw(section("fuzzy"), "kind")) {
        spec.fuzzy_kind = kind->value;
        if (spec.fuzzy_kind != "standard") {
            throw ValidationError("fuzzy.kind", "unknown fuzzy metric '" + spec.fuzzy_kind + "'");
        }
    }

    // [zeta]
    const auto* zeta = section("zeta");
    if (!zeta) throw ValidationError("zeta", "required section");
    if (const auto* kind = raw(zeta, "kind")) {
        if (kind->value != "linear") {
            throw ValidationError("zeta.kind", "unknown zeta kind '" + kind->value + "'");
        }
    } else {
        throw ValidationError("zeta.kind", "required");
    }
    const auto* k_value = raw(zeta, "k");
    if (!k_value) throw ValidationError("zeta.k", "required");
    spec.zeta_k = parse_scalar_at(k_value->value, k_value->line, "k");
    if (!(spec.zeta_k > 0.0) || !std::isfinite(spec.zeta_k)) {
        throw ValidationError("zeta.k", "must be a positive finite number");
    }

    // mapping: exactly one of [map] / [multimap]
    const auto* map_section = section("map");
    const auto* multimap_section = section("multimap");
    if (map_section && multimap_section) {
        throw ValidationError("mapping", "both [map] and [multimap] present");
    }
    if (!map_section && !multimap_section) {
        throw ValidationError("mapping", "no mapping: provide [map] or [multimap]");
    }
    if (map_section) {
        const auto* matrix_value = raw(map_section, "matrix");
        if (!matrix_value) throw ValidationError("map.matrix", "required");
        const Matrix m = parse_matrix_at(matrix_value->value, matrix_value->line, "matrix");
        std::optional<Vector> offset;
        if (const auto* off = raw(map_section, "offset")) {
            offset = parse_vector_at(off->value, off->line, "offset");
        }
        spec.map = read_affine(m, offset, spec.dim, "map");
    } else {
        for (std::size_t b = 1;; ++b) {
            const auto* matrix_value = raw(multimap_section, "matrix_" + std::to_string(b));
            if (!matrix_value) break;
            const Matrix m =
                parse_matrix_at(matrix_value->value, matrix_value->line, "matrix_" + std::to_string(b));
            std::optional<Vector> offset;
            if (const auto* off = raw(multimap_section, "offset_" + std::to_string(b))) {
                offset = parse_vector_at(off->value, off->line, "offset_" + std::to_string(b));
            }
            spec.multimap.push_back(
                read_affine(m, offset, spec.dim, "multimap.branch_" + std::to_string(b)));
        }
        if (spec.multimap.empty()) {
            throw ValidationError("multimap", "needs matrix_1 (branches number from 1)");
        }
        // reject stray branch keys beyond the contiguous run
        for (const auto& [key, value] : *multimap_section) {
            const std::string digits = key.substr(key.rfind('_') + 1);
            const std::uint64_t branch = parse_u64_at(digits, value.line, key);
            if (branch == 0 || branch > spec.multimap.size()) {
                throw ParseError(value.line, "branch key '" + key +
                                                 "' breaks the contiguous numbering");
            }
        }
    }

    // [solver]
    const auto* solver = section("solver");
    const auto* x0_value = raw(solver, "x0");
    if (!x0_value) throw ValidationError("solver.x0", "required");
    spec.x0 = parse_vector_at(x0_value->value, x0_value->line, "x0");
    if (spec.x0.size() != spec.dim) {
        throw ValidationError("solver.x0", "dimension mismatch: expected " +
                                               std::to_string(spec.dim) + " entries");
    }
    require_finite_vector(spec.x0, "solver.x0");
    if (const auto* tol = raw(solver, "tol")) {
        spec.tol = parse_scalar_at(tol->value, tol->line, "tol");
        if (!(spec.tol > 0.0 && spec.tol < 1.0)) {
            throw ValidationError("solver.tol", "must lie in (0,1)");
        }
    }
    if (const auto* max_iter = raw(solver, "max_iter")) {
        const long long v = parse_int_at(max_iter->value, max_iter->line, "max_iter");
        if (v < 1) throw ValidationError("solver.max_iter", "must be >= 1");
        spec.max_iter = static_cast<int>(v);
    }
    if (const auto* rho_ref = raw(solver, "rho_ref")) {
        spec.rho_ref = parse_scalar_at(rho_ref->value, rho_ref->line, "rho_ref");
        if (!(spec.rho_ref > 0.0) || !std::isfinite(spec.rho_ref)) {
            throw ValidationError("solver.rho_ref", "must be positive and finite");
        }
    }
    if (const auto* starts = raw(solver, "uniqueness_starts")) {
        const long long v = parse_int_at(starts->value, starts->line, "uniqueness_starts");
        if (v < 0) throw ValidationError("solver.uniqueness_starts", "must be >= 0");
        spec.uniqueness_starts = static_cast<int>(v);
    }

    // [sample]
    const auto* sample = section("sample");
    if (const auto* pairs = raw(sample, "pair_samples")) {
        const long long v = parse_int_at(pairs->value, pairs->line, "pair_samples");
        if (v < 1) throw ValidationError("sample.pair_samples", "must be >= 1");
        spec.pair_samples = static_cast<int>(v);
    }
    if (const auto* grid = raw(sample, "rho_grid")) {
        const Vector v = parse_vector_at(grid->value, grid->line, "rho_grid");
        spec.rho_grid.assign(v.begin(), v.end());
        for (Scalar rho : spec.rho_grid) {
            if (!(rho > 0.0) || !std::isfinite(rho)) {
                throw ValidationError("sample.rho_grid", "values must be positive and finite");
            }
        }
    }
    if (const auto* seed = raw(sample, "seed")) {
        spec.seed = parse_u64_at(seed->value, seed->line, "seed");
    }
    const auto* box_min = raw(sample, "box_min");
    const auto* box_max = raw(sample, "box_max");
    if (static_cast<bool>(box_min) != static_cast<bool>(box_max)) {
        throw ValidationError("sample.box", "box_min and box_max must come together");
    }
    if (box_min) {
        spec.box_min = parse_vector_at(box_min->value, box_min->line, "box_min");
        spec.box_max = parse_vector_at(box_max->value, box_max->line, "box_max");
        if (spec.box_min->size() != spec.dim || spec.box_max->size() != spec.dim) {
            throw ValidationError("sample.box", "dimension mismatch with [space] dim");
        }
        require_finite_vector(*spec.box_min, "sample.box_min");
        require_finite_vector(*spec.box_max, "sample.box_max");
        for (Index i = 0; i < spec.dim; ++i) {
            if (!((*spec.box_min)[i] < (*spec.box_max)[i])) {
                throw ValidationError("sample.box", "box_min must be below box_max");
            }
        }
    }

    return spec;
}

namespace {

std::string render_vector(const Vector& v) { return format_vector(v, ", "); }

std::string render_matrix(const Matrix& m) {
    std::string out;
    for (Index r = 0; r < m.rows(); ++r) {
        if (r > 0) out += "; ";
        for (Index c = 0; c < m.cols(); ++c) {
            if (c > 0) out += ", ";
            out += format_scalar(m(r, c));
        }
    }
    return out;
}

}  // namespace

std::string render_problem(const ProblemSpec& spec) {
    std::ostringstream os;
    os << "[space]\n";
    os << "dim = " << spec.dim << "\n";
    os << "metric = " << spec.metric << "\n\n";

    os << "[tnorm]\n";
    os << "kind = " << to_string(spec.tnorm) << "\n\n";

    os << "[fuzzy]\n";
    os << "kind = " << spec.fuzzy_kind << "\n\n";

    os << "[zeta]\n";
    os << "kind = linear\n";
    os << "k = " << format_scalar(spec.zeta_k) << "\n\n";

    if (spec.map) {
        os << "[map]\n";
        os << "matrix = " << render_matrix(spec.map->matrix) << "\n";
        os << "offset = " << render_vector(spec.map->offset) << "\n\n";
    } else {
        os << "[multimap]\n";
        for (std::size_t b = 0; b < spec.multimap.size(); ++b) {
            os << "matrix_" << (b + 1) << " = " << render_matrix(spec.multimap[b].matrix)
               << "\n";
            os << "offset_" << (b + 1) << " = " << render_vector(spec.multimap[b].offset)
               << "\n";
        }
        os << "\n";
    }

    os << "[solver]\n";
    os << "x0 = " << render_vector(spec.x0) << "\n";
    os << "tol = " << format_scalar(spec.tol) << "\n";
    os << "max_iter = " << spec.max_iter << "\n";
    os << "rho_ref = " << format_scalar(spec.rho_ref) << "\n";
    os << "uniqueness_starts = " << spec.uniqueness_starts << "\n\n";

    os << "[sample]\n";
    os << "pair_samples = " << spec.pair_samples << "\n";
    os << "rho_grid = ";
    for (std::size_t i = 0; i < spec.rho_grid.size(); ++i) {
        if (i > 0) os << ", ";
        os << format_scalar(spec.rho_grid[i]);
    }
    os << "\n";
    if (spec.seed) os << "seed = " << *spec.seed << "\n";
    if (spec.box_min) {
        os << "box_min = " << render_vector(*spec.box_min) << "\n";
        os << "box_max = " << render_vector(*spec.box_max) << "\n";
    }
    return os.str();
}

namespace {

ProblemSpec scalar_map_spec(Scalar slope, Scalar offset, Scalar zeta_k, Scalar x0,
                            int max_iter = 10000) {
    ProblemSpec spec;
    spec.dim = 1;
    spec.zeta_k = zeta_k;
    AffineSpec map;
    map.matrix = Matrix::Constant(1, 1, slope);
    map.offset = Vector::Constant(1, offset);
    spec.map = map;
    spec.x0 = Vector::Constant(1, x0);
    spec.max_iter = max_iter;
    spec.seed = kDefaultSeed;
    return spec;
}

std::vector<Demo> build_demos() {
    std::vector<Demo> demos;

    demos.push_back({"half", "single-valued halving map, converges to 0",
                     scalar_map_spec(0.5, 0.0, 0.5, 1.0)});

    {
        ProblemSpec spec;
        spec.dim = 1;
        spec.zeta_k = 0.5;
        AffineSpec third;
        third.matrix = Matrix::Constant(1, 1, 1.0 / 3.0);
        third.offset = Vector::Zero(1);
        AffineSpec half;
        half.matrix = Matrix::Constant(1, 1, 0.5);
        half.offset = Vector::Zero(1);
        spec.multimap = {third, half};
        spec.x0 = Vector::Constant(1, 1.0);
        spec.seed = kDefaultSeed;
        demos.push_back({"two-branch", "two-branch shrinking multimap, converges to 0",
                         std::move(spec)});
    }

    demos.push_back({"expand", "doubling map against a shrinking zeta; fails verification",
                     scalar_map_spec(2.0, 0.0, 0.5, 1.0)});

    demos.push_back({"translate", "unit translation; no fixed point, exhausts max_iter",
                     scalar_map_spec(1.0, 1.0, 0.9, 0.0, 500)});

    demos.push_back({"harmonic", "partial sums of 1/k: fixed-gap nearness certifies, "
                                 "the all-pairs check fails",
                     SequenceSpec{}});

    return demos;
}

}  // namespace

std::span<const Demo> demo_registry() {
    static const std::vector<Demo> demos = build_demos();
    return demos;
}

const Demo* find_demo(std::string_view name) {
    for (const Demo& demo : demo_registry()) {
        if (demo.name == name) return &demo;
    }
    return nullptr;
}

}  // namespace ffp

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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ffp/problem.hpp"
#include "ffp/runner.hpp"

namespace {

constexpr std::string_view kDemoPrefix = "demo:";

struct LoadedProblem {
    ffp::Problem problem;
    std::string label;
};

LoadedProblem load_problem(const std::string& argument) {
    if (argument.rfind(kDemoPrefix, 0) == 0) {
        const std::string name(argument.substr(kDemoPrefix.size()));
        const ffp::Demo* demo = ffp::find_demo(name);
        if (!demo) {
            std::string names;
            for (const auto& d : ffp::demo_registry()) {
                if (!names.empty()) names += ", ";
                names += d.name;
            }
            throw ffp::ProblemError("unknown demo '" + name + "' (available: " + names + ")");
        }
        return {demo->problem, argument};
    }

    std::ifstream in(argument, std::ios::binary);
    if (!in) {
        throw std::ios_base::failure("cannot read problem file '" + argument + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return {ffp::parse_problem(buffer.str()), argument};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fixed-point solving and verification over fuzzy metrics"};
    app.require_subcommand(1);

    std::string problem_arg;
    std::string output_dir = ".";
    bool skip_verify = false;
    std::uint64_t seed = 0;
    double tol = 0;
    int max_iter = 0;

    bool seed_set = false, tol_set = false, max_iter_set = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("problem", problem_arg,
                        "problem file path, or demo:<name> for a built-in")
            ->required();
        sub->add_option("--output", output_dir, "directory for report/certificate/trace");
        sub->add_flag("--skip-verify", skip_verify, "iterate even without a verification pass");
        sub->add_option("--seed", seed, "override the sampling seed")
            ->each([&](const std::string&) { seed_set = true; });
        sub->add_option("--tol", tol, "override the solver tolerance")
            ->each([&](const std::string&) { tol_set = true; });
        sub->add_option("--max-iter", max_iter, "override the iteration budget")
            ->each([&](const std::string&) { max_iter_set = true; });
    };

    CLI::App* verify = app.add_subcommand("verify", "run the hypothesis checks and report");
    CLI::App* solve = app.add_subcommand("solve", "verify, then iterate to a fixed point");
    CLI::App* trace = app.add_subcommand("trace", "solve and emit the diagnostic trace CSV");
    add_common(verify);
    add_common(solve);
    add_common(trace);

    CLI11_PARSE(app, argc, argv);

    ffp::Subcommand cmd = ffp::Subcommand::Verify;
    if (solve->parsed()) cmd = ffp::Subcommand::Solve;
    if (trace->parsed()) cmd = ffp::Subcommand::Trace;

    ffp::RunOptions options;
    options.output_dir = output_dir;
    options.skip_verify = skip_verify;
    if (seed_set) options.seed = seed;
    if (tol_set) options.tol = tol;
    if (max_iter_set) options.max_iter = max_iter;
    if (const char* env = std::getenv("FFP_SEED")) {
        try {
            options.env_seed = std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "error: FFP_SEED is not an unsigned integer\n";
            return ffp::kExitCounterexample;
        }
    }

    try {
        LoadedProblem loaded = load_problem(problem_arg);
        return ffp::run(cmd, loaded.problem, loaded.label, options);
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return ffp::kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return ffp::kExitCounterexample;
    }
}

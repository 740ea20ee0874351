// Copyright 2026 The Morita Tori Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "morita/commands.hpp"

namespace {

std::string read_input(const std::string &path) {
    if (path.empty() || path == "-") {
        return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    }
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const std::map<std::string, std::string> kDescriptions = {
    {"check", "check membership in SO(n, n | Z) and report the special form"},
    {"act", "apply g to theta"},
    {"normalize", "right-normalize g to special form"},
    {"decompose", "factor g = mu(N) rho(Atilde) g' rho(R0^-1)"},
    {"embed", "build the embedding maps T, S and their certificates"},
    {"pipeline", "full certified Morita chain from theta to g theta"},
    {"simulate", "numerically check the bimodule relations"},
    {"campaign", "certify random (g, theta) pairs"},
};

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Morita equivalence data for SO(n, n | Z) acting on rational noncommutative tori"};
    app.require_subcommand(1, 1);

    std::string input_path;
    std::string output_path;
    std::uint64_t seed = 0;
    std::size_t trials = 0, samples = 0, word_length = 0, n = 0;
    double tolerance = 0;
    bool timings = false;

    std::vector<CLI::App *> subs;
    for (const auto &name : morita::command_names()) {
        CLI::App *sub = app.add_subcommand(name, kDescriptions.at(name));
        sub->add_option("--input,-i", input_path, "job document (stdin when omitted)");
        sub->add_option("--output,-o", output_path, "result document (stdout when omitted)");
        sub->add_option("--seed", seed, "random seed");
        sub->add_option("--trials", trials, "campaign trials");
        sub->add_option("--samples", samples, "simulation triples");
        sub->add_option("--tolerance", tolerance, "simulation residual bound");
        sub->add_option("--word-length", word_length, "maximum generator word length");
        sub->add_option("--n", n, "campaign dimension");
        sub->add_flag("--timings", timings, "append wall-clock timings");
        subs.push_back(sub);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? morita::kExitOk : morita::kExitParseError;
    }

    CLI::App *chosen = app.get_subcommands().front();
    morita::CommandOptions options;
    if (chosen->count("--seed")) {
        options.seed = seed;
    }
    if (chosen->count("--trials")) {
        options.trials = trials;
    }
    if (chosen->count("--samples")) {
        options.samples = samples;
    }
    if (chosen->count("--tolerance")) {
        options.tolerance = tolerance;
    }
    if (chosen->count("--word-length")) {
        options.word_length = word_length;
    }
    if (chosen->count("--n")) {
        options.n = n;
    }
    options.timings = timings;

    std::string input;
    std::string name = chosen->get_name();
    bool stdin_optional = name == "campaign" && input_path.empty();
    if (!stdin_optional) {
        try {
            input = read_input(input_path);
        } catch (const std::exception &e) {
            std::cerr << "morita: " << e.what() << "\n";
            return morita::kExitParseError;
        }
    }

    morita::CommandResult result = morita::run_command(name, input, options);
    if (output_path.empty()) {
        std::cout << result.output << "\n";
    } else {
        std::ofstream out(output_path);
        if (!out) {
            std::cerr << "morita: cannot write " << output_path << "\n";
            return morita::kExitParseError;
        }
        out << result.output << "\n";
    }
    return result.exit_code;
}

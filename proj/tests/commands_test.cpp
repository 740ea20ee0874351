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

#include "morita/commands.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

#include "morita/embedding.hpp"
#include "test_support.hpp"

using namespace morita;
using Json = nlohmann::ordered_json;

namespace {

constexpr const char *kFlipJob = R"({
  "n": 2,
  "g": {"A": [[0, 0], [0, 0]], "B": [[1, 0], [0, 1]], "C": [[1, 0], [0, 1]], "D": [[0, 0], [0, 0]]},
  "theta": [["0", "1/3"], ["-1/3", "0"]]
})";

constexpr const char *kIdentityJob = R"({
  "n": 2,
  "g": {"A": [[1, 0], [0, 1]], "B": [[0, 0], [0, 0]], "C": [[0, 0], [0, 0]], "D": [[1, 0], [0, 1]]},
  "theta": [["0", "2/7"], ["-2/7", "0"]]
})";

constexpr const char *kFlipZeroTheta = R"({
  "n": 2,
  "g": {"A": [[0, 0], [0, 0]], "B": [[1, 0], [0, 1]], "C": [[1, 0], [0, 1]], "D": [[0, 0], [0, 0]]},
  "theta": [[0, 0], [0, 0]]
})";

constexpr const char *kNotMember = R"({
  "n": 2,
  "g": {"A": [[2, 0], [0, 1]], "B": [[0, 0], [0, 0]], "C": [[0, 0], [0, 0]], "D": [[1, 0], [0, 1]]}
})";

Json run(const std::string &name, const std::string &input, int expected_exit, const CommandOptions &opts = {}) {
    CommandResult r = run_command(name, input, opts);
    EXPECT_EQ(r.exit_code, expected_exit) << name << ": " << r.output;
    return Json::parse(r.output);
}

}  // namespace

TEST(commands, names) {
    EXPECT_EQ(command_names().size(), 8u);
    Json out = run("bogus", kFlipJob, kExitParseError);
    EXPECT_EQ(out["error"]["code"], "ParseError");
}

TEST(commands, check) {
    Json ok = run("check", kFlipJob, kExitOk);
    EXPECT_EQ(ok["member"], true);
    EXPECT_EQ(ok["rank_C"], 2);
    EXPECT_EQ(ok["special_form"]["p"], 1);
    Json bad = run("check", kNotMember, kExitCertificateFailed);
    EXPECT_EQ(bad["member"], false);
    EXPECT_EQ(bad["error"]["code"], "MembershipFailed");
}

TEST(commands, act) {
    Json id = run("act", kIdentityJob, kExitOk);
    EXPECT_EQ(id["result"], id["theta"]);
    Json flip = run("act", kFlipJob, kExitOk);
    EXPECT_EQ(flip["result"][0][1], "-3");
    Json undefined = run("act", kFlipZeroTheta, kExitUndefined);
    EXPECT_EQ(undefined["error"]["code"], "Undefined");
    run("act", kNotMember, kExitParseError);
    run("act", "not json", kExitParseError);
}

TEST(commands, normalize_and_decompose) {
    Json norm = run("normalize", kFlipJob, kExitOk);
    EXPECT_EQ(norm["p"], 1);
    EXPECT_EQ(norm["q"], 0);
    Json dec = run("decompose", kFlipJob, kExitOk);
    EXPECT_TRUE(dec.contains("g_prime"));
    EXPECT_EQ(dec["all_passed"], true);
}

TEST(commands, pipeline_flip) {
    Json out = run("pipeline", kFlipJob, kExitOk);
    EXPECT_EQ(out["theta_prime"][0][1], "-3");
    EXPECT_EQ(out["all_passed"], true);
    EXPECT_EQ(out["certificates"].size(), certificate_names().size());
    for (const auto &c : out["certificates"]) {
        EXPECT_EQ(c["status"], "passed") << c.dump();
    }
    Json undefined = run("pipeline", kFlipZeroTheta, kExitUndefined);
    EXPECT_EQ(undefined["error"]["code"], "Undefined");
}

TEST(commands, pipeline_needs_theta) {
    run("pipeline", kNotMember, kExitParseError);
    std::string no_theta = R"({"n": 2, "g": {"A": [[1, 0], [0, 1]], "B": [[0, 0], [0, 0]],
      "C": [[0, 0], [0, 0]], "D": [[1, 0], [0, 1]]}})";
    run("pipeline", no_theta, kExitParseError);
    Json embed = run("embed", no_theta, kExitOk);
    EXPECT_EQ(embed["theta_probed"], true);
}

TEST(commands, simulate_flip) {
    CommandOptions opts;
    opts.samples = 30;
    Json out = run("simulate", kFlipJob, kExitOk, opts);
    EXPECT_EQ(out["simulation"]["triples"], 30);
    EXPECT_EQ(out["simulation"]["within_tolerance"], true);
    EXPECT_LT(out["simulation"]["module_relation"].get<double>(), 1e-9);
}

TEST(commands, campaign_is_reproducible) {
    CommandOptions opts;
    opts.n = 4;
    opts.seed = 7;
    opts.trials = 50;
    CommandResult a = run_command("campaign", "", opts);
    CommandResult b = run_command("campaign", "", opts);
    EXPECT_EQ(a.exit_code, kExitOk);
    EXPECT_EQ(a.output, b.output);
    Json out = Json::parse(a.output);
    EXPECT_EQ(out["summary"]["passed"], 50);
    EXPECT_EQ(out["summary"]["failed"], 0);
}

TEST(commands, timings) {
    CommandOptions opts;
    opts.timings = true;
    Json out = run("act", kFlipJob, kExitOk, opts);
    EXPECT_GE(out["timings"]["elapsed_ms"].get<double>(), 0.0);
}

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

#include <chrono>
#include <random>

#include "json_codec.hpp"
#include "morita/campaign.hpp"
#include "morita/exact_linalg.hpp"
#include "morita/module_sim.hpp"
#include "morita/normal_form.hpp"

namespace morita {

using codec::Json;

namespace {

constexpr std::size_t kThetaProbes = 20;

CommandResult finish(int code, Json body) {
    return CommandResult{code, codec::pretty(body)};
}

Json header(std::string_view command) {
    return Json{{"version", std::string(kDocumentVersion)}, {"command", std::string(command)}};
}

std::uint64_t seed_of(const JobDocument &doc, const CommandOptions &options) {
    return options.seed.value_or(doc.options.seed);
}

// Theta from the document, or the first seeded random theta with g theta defined.
std::optional<Theta> theta_for(const JobDocument &doc, const GroupElement &g, const CommandOptions &options,
                               Json &body) {
    if (doc.theta) {
        return doc.theta_value();
    }
    std::mt19937_64 rng(seed_of(doc, options));
    for (std::size_t i = 0; i < kThetaProbes; i++) {
        Theta candidate = random_theta(rng, g.n());
        if (act(g, candidate)) {
            body["theta_probed"] = true;
            return candidate;
        }
    }
    return std::nullopt;
}

struct Traced {
    std::optional<PipelineResult> result;
    CertificateLog log;
    std::optional<MoritaError> error;
};

Traced traced_pipeline(const GroupElement &g, const Theta &theta) {
    Traced out;
    try {
        out.result = pipeline(g, theta, &out.log);
    } catch (const MoritaError &e) {
        if (e.code() == ErrorCode::Undefined) {
            throw;
        }
        out.error = e;
    }
    return out;
}

int certified_exit(const Traced &t) {
    return t.result && t.log.all_passed() ? kExitOk : kExitCertificateFailed;
}

void attach_certificates(Json &body, const Traced &t) {
    body["certificates"] = codec::certificate_report(t.log.entries());
    body["all_passed"] = certified_exit(t) == kExitOk;
    if (t.error) {
        body["error"] = codec::encode(*t.error);
    }
}

// Runs a pipeline-backed command; `fill` writes the command-specific fields.
template <typename Fill>
CommandResult pipeline_command(std::string_view name, const JobDocument &doc, const CommandOptions &options,
                               Fill &&fill) {
    Json body = header(name);
    GroupElement g = doc.group_element();
    auto theta = theta_for(doc, g, options, body);
    if (!theta) {
        throw MoritaError(ErrorCode::Undefined,
                          "no theta with g theta defined among " + std::to_string(kThetaProbes) + " probes");
    }
    body["theta"] = codec::encode(*theta);
    Traced t = traced_pipeline(g, *theta);
    if (t.result) {
        fill(body, *t.result);
    }
    attach_certificates(body, t);
    return finish(certified_exit(t), std::move(body));
}

}  // namespace

const std::vector<std::string> &command_names() {
    static const std::vector<std::string> names = {"check",    "act",      "normalize", "decompose",
                                                   "embed",    "pipeline", "simulate",  "campaign"};
    return names;
}

CommandResult cmd_check(const JobDocument &doc, const CommandOptions &) {
    Json body = header("check");
    std::optional<GroupElement> g;
    try {
        g = doc.group_element();
    } catch (const MoritaError &e) {
        if (e.code() != ErrorCode::MembershipFailed) {
            throw;
        }
        body["member"] = false;
        body["error"] = codec::encode(e);
        return finish(kExitCertificateFailed, std::move(body));
    }
    body["member"] = true;
    std::size_t r = rank(g->C());
    body["rank_C"] = r;
    try {
        SpecialForm sf = detect_special_form(*g);
        body["special_form"] = Json{{"p", sf.p}, {"q", sf.q()}, {"Z", codec::encode(sf.Z)}};
    } catch (const MoritaError &e) {
        body["special_form"] = nullptr;
        body["special_form_reason"] = codec::encode(e);
    }
    return finish(kExitOk, std::move(body));
}

CommandResult cmd_act(const JobDocument &doc, const CommandOptions &) {
    Json body = header("act");
    GroupElement g = doc.group_element();
    Theta theta = doc.theta_value();
    body["theta"] = codec::encode(theta);
    auto image = act(g, theta);
    if (!image) {
        throw MoritaError(ErrorCode::Undefined, "C theta + D is singular", format_matrix(theta.matrix()));
    }
    body["result"] = codec::encode(*image);
    return finish(kExitOk, std::move(body));
}

CommandResult cmd_normalize(const JobDocument &doc, const CommandOptions &) {
    Json body = header("normalize");
    GroupElement g = doc.group_element();
    IntMatrix r0 = normalize_right(g);
    GroupElement g1 = compose(g, rho(r0));
    SpecialForm sf = detect_special_form(g1);
    body["R0"] = codec::encode(r0);
    body["g_normalized"] = codec::encode(g1);
    body["p"] = sf.p;
    body["q"] = sf.q();
    body["Z"] = codec::encode(sf.Z);
    return finish(kExitOk, std::move(body));
}

CommandResult cmd_decompose(const JobDocument &doc, const CommandOptions &options) {
    return pipeline_command("decompose", doc, options, [](Json &body, const PipelineResult &r) {
        body["R0"] = codec::encode(r.R0);
        body["g_prime"] = codec::encode(r.data.gprime);
        body["N"] = codec::encode(r.data.decomposition.N);
        body["A_tilde"] = codec::encode(r.data.decomposition.Atilde);
    });
}

CommandResult cmd_embed(const JobDocument &doc, const CommandOptions &options) {
    return pipeline_command("embed", doc, options, [](Json &body, const PipelineResult &r) {
        body["R0"] = codec::encode(r.R0);
        body["embedding"] = codec::encode(r.data);
    });
}

CommandResult cmd_pipeline(const JobDocument &doc, const CommandOptions &options) {
    if (!doc.theta) {
        throw MoritaError(ErrorCode::ParseError, "pipeline needs theta");
    }
    return pipeline_command("pipeline", doc, options, [](Json &body, const PipelineResult &r) {
        body["R0"] = codec::encode(r.R0);
        body["theta_prime"] = codec::encode(r.data.theta_prime);
        body["embedding"] = codec::encode(r.data);
        body["chain"] = codec::encode(r.chain);
    });
}

CommandResult cmd_simulate(const JobDocument &doc, const CommandOptions &options) {
    if (!doc.theta) {
        throw MoritaError(ErrorCode::ParseError, "simulate needs theta");
    }
    std::size_t samples = options.samples.value_or(doc.options.samples);
    double tolerance = options.tolerance.value_or(doc.options.tolerance);
    std::uint64_t seed = seed_of(doc, options);
    bool within = true;
    CommandResult out = pipeline_command("simulate", doc, options, [&](Json &body, const PipelineResult &r) {
        ModuleDescriptor d = ModuleDescriptor::from_embedding(r.data);
        SimulationReport rep = simulate(d, seed, samples);
        within = rep.module_relation < tolerance && rep.left_relation < tolerance && rep.commutation < tolerance;
        body["descriptor"] = Json{{"p", d.p()}, {"q", d.q()}, {"k", d.k()}, {"K", d.K()}};
        body["simulation"] = Json{{"seed", seed},
                                  {"triples", rep.triples},
                                  {"tolerance", tolerance},
                                  {"module_relation", rep.module_relation},
                                  {"left_relation", rep.left_relation},
                                  {"bimodule_commutation", rep.commutation},
                                  {"max_phase_deviation", rep.max_phase_deviation},
                                  {"within_tolerance", within}};
    });
    if (out.exit_code == kExitOk && !within) {
        out.exit_code = kExitCertificateFailed;
    }
    return out;
}

CommandResult cmd_campaign(const JobDocument *doc, const CommandOptions &options) {
    JobOptions defaults = doc ? doc->options : JobOptions{};
    CampaignConfig config;
    config.n = options.n.value_or(doc ? doc->n : 2);
    config.seed = options.seed.value_or(defaults.seed);
    config.trials = options.trials.value_or(defaults.trials);
    config.max_word_length = options.word_length.value_or(defaults.word_length);
    if (config.n < 2) {
        throw MoritaError(ErrorCode::ParseError, "campaign needs n >= 2");
    }
    CampaignReport report = run_campaign(config);

    Json body = header("campaign");
    body["n"] = config.n;
    body["seed"] = config.seed;
    body["trials"] = config.trials;
    body["max_word_length"] = config.max_word_length;
    Json items = Json::array();
    for (const auto &t : report.trials) {
        Json item{{"index", t.index}, {"seed", t.seed}, {"word_length", t.word_length}};
        switch (t.outcome) {
            case TrialOutcome::Passed:
                item["outcome"] = "passed";
                item["p"] = t.p;
                item["q"] = t.q;
                item["k"] = t.k;
                break;
            case TrialOutcome::Failed: {
                item["outcome"] = "failed";
                item["error"] = t.error;
                Json failed = Json::array();
                for (const auto &c : t.certificates) {
                    if (!c.passed) {
                        failed.push_back(c.name);
                    }
                }
                item["failed_certificates"] = std::move(failed);
                break;
            }
            case TrialOutcome::Undefined:
                item["outcome"] = "undefined";
                break;
        }
        items.push_back(std::move(item));
    }
    std::size_t failed = report.count(TrialOutcome::Failed);
    body["summary"] = Json{{"passed", report.count(TrialOutcome::Passed)},
                           {"failed", failed},
                           {"undefined", report.count(TrialOutcome::Undefined)}};
    body["results"] = std::move(items);
    return finish(failed == 0 ? kExitOk : kExitCertificateFailed, std::move(body));
}

CommandResult run_command(std::string_view name, std::string_view input, const CommandOptions &options) {
    auto started = std::chrono::steady_clock::now();
    CommandResult result;
    try {
        std::optional<JobDocument> doc;
        bool blank = input.find_first_not_of(" \t\r\n") == std::string_view::npos;
        if (name != "campaign" || !blank) {
            doc = parse_job(input);
        }
        if (name == "check") {
            result = cmd_check(*doc, options);
        } else if (name == "act") {
            result = cmd_act(*doc, options);
        } else if (name == "normalize") {
            result = cmd_normalize(*doc, options);
        } else if (name == "decompose") {
            result = cmd_decompose(*doc, options);
        } else if (name == "embed") {
            result = cmd_embed(*doc, options);
        } else if (name == "pipeline") {
            result = cmd_pipeline(*doc, options);
        } else if (name == "simulate") {
            result = cmd_simulate(*doc, options);
        } else if (name == "campaign") {
            result = cmd_campaign(doc ? &*doc : nullptr, options);
        } else {
            throw MoritaError(ErrorCode::ParseError, "unknown command " + std::string(name));
        }
    } catch (const MoritaError &e) {
        int code = kExitCertificateFailed;
        switch (e.code()) {
            case ErrorCode::Undefined:
                code = kExitUndefined;
                break;
            case ErrorCode::ParseError:
            case ErrorCode::MembershipFailed:
            case ErrorCode::NotSkew:
            case ErrorCode::ShapeMismatch:
                code = kExitParseError;
                break;
            default:
                break;
        }
        Json body = header(name);
        body["error"] = codec::encode(e);
        result = finish(code, std::move(body));
    }
    if (options.timings) {
        Json body = Json::parse(result.output);
        auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started);
        body["timings"] = Json{{"elapsed_ms", elapsed.count()}};
        result.output = codec::pretty(body);
    }
    return result;
}

}  // namespace morita

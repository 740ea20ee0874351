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

#include "morita/io.hpp"

#include "json_codec.hpp"

namespace morita {

namespace codec {

Json encode(const IntMatrix &m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); r++) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); c++) {
            auto small = to_int64(m(r, c));
            row.push_back(small ? Json(*small) : Json(to_string(m(r, c))));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Json encode(const RatMatrix &m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); r++) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); c++) {
            row.push_back(to_string(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Json encode(const GroupElement &g) {
    return Json{{"A", encode(g.A())}, {"B", encode(g.B())}, {"C", encode(g.C())}, {"D", encode(g.D())}};
}

Json encode(const Theta &theta) {
    return encode(theta.matrix());
}

namespace {

Json encode_list(const std::vector<Integer> &v) {
    Json out = Json::array();
    for (const auto &x : v) {
        out.push_back(to_string(x));
    }
    return out;
}

}  // namespace

Json encode(const MoritaError &e) {
    Json out{{"code", std::string(error_code_name(e.code()))}, {"message", e.what()}};
    if (!e.witness().empty()) {
        out["witness"] = e.witness();
    }
    return out;
}

Json encode(const TorsionData &td) {
    return Json{{"m", to_string(td.m)},   {"R", encode(td.R)},        {"h", encode_list(td.h)},
                {"m_j", encode_list(td.mj)}, {"n_j", encode_list(td.nj)}, {"c_j", encode_list(td.cj)},
                {"d_j", encode_list(td.dj)}};
}

Json encode(const EmbeddingData &data) {
    return Json{
        {"p", data.sf.p},
        {"q", data.sf.q()},
        {"k", data.td.k()},
        {"Z", encode(data.sf.Z)},
        {"torsion", encode(data.td)},
        {"theta", encode(data.theta)},
        {"F11", encode(data.F11)},
        {"T", encode(data.Tmap.T)},
        {"S", encode(data.dual.S.T)},
        {"J", encode(data.Tmap.J)},
        {"J_prime", encode(data.Tmap.Jprime)},
        {"theta_prime", encode(data.theta_prime)},
        {"A_script", encode(data.A_script)},
        {"Phi", encode(data.Phi)},
        {"g_prime", encode(data.gprime)},
        {"N", encode(data.decomposition.N)},
        {"A_tilde", encode(data.decomposition.Atilde)},
    };
}

Json encode(const MoritaChain &chain) {
    Json steps = Json::array();
    for (const auto &step : chain.steps) {
        Json s;
        switch (step.kind) {
            case StepKind::IsoRho:
                s["kind"] = "rho";
                s["R"] = encode(step.matrix);
                break;
            case StepKind::IsoMu:
                s["kind"] = "mu";
                s["N"] = encode(step.matrix);
                break;
            case StepKind::HeisenbergModule:
                s["kind"] = "heisenberg_module";
                break;
        }
        s["source"] = encode(step.source);
        s["target"] = encode(step.target);
        steps.push_back(std::move(s));
    }
    return Json{{"source", encode(chain.source)}, {"target", encode(chain.target)}, {"steps", std::move(steps)}};
}

namespace {

bool scalar_array(const Json &j) {
    for (const auto &v : j) {
        if (v.is_structured()) {
            return false;
        }
    }
    return true;
}

void pretty_into(const Json &j, std::size_t depth, std::string &out) {
    std::string pad(2 * (depth + 1), ' ');
    std::string close(2 * depth, ' ');
    if (j.is_object() && !j.empty()) {
        out += "{\n";
        bool first = true;
        for (const auto &[key, value] : j.items()) {
            out += first ? "" : ",\n";
            first = false;
            out += pad + Json(key).dump() + ": ";
            pretty_into(value, depth + 1, out);
        }
        out += "\n" + close + "}";
    } else if (j.is_array() && !j.empty() && !scalar_array(j)) {
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); i++) {
            out += pad;
            pretty_into(j[i], depth + 1, out);
            out += i + 1 < j.size() ? ",\n" : "\n";
        }
        out += close + "]";
    } else if (j.is_array()) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); i++) {
            out += (i ? ", " : "") + j[i].dump();
        }
        out += "]";
    } else {
        out += j.dump();
    }
}

}  // namespace

std::string pretty(const Json &j) {
    std::string out;
    pretty_into(j, 0, out);
    return out;
}

Json certificate_report(const std::vector<Certificate> &entries) {
    Json out = Json::array();
    for (const auto &name : certificate_names()) {
        const Certificate *found = nullptr;
        for (const auto &c : entries) {
            if (c.name == name) {
                found = &c;
            }
        }
        Json item{{"name", name}};
        if (!found) {
            item["status"] = "not_run";
        } else {
            item["status"] = found->passed ? "passed" : "failed";
            item["detail"] = found->detail;
            if (!found->witness.empty()) {
                item["witness"] = found->witness;
            }
        }
        out.push_back(std::move(item));
    }
    return out;
}

namespace {

[[noreturn]] void parse_fail(const std::string &message) {
    throw MoritaError(ErrorCode::ParseError, message);
}

template <typename T, typename F>
Matrix<T> decode_matrix(const Json &j, std::size_t rows, std::size_t cols, const std::string &what, F &&entry) {
    if (!j.is_array() || j.size() != rows) {
        parse_fail(what + ": expected " + std::to_string(rows) + " rows");
    }
    Matrix<T> m(rows, cols);
    for (std::size_t r = 0; r < rows; r++) {
        const Json &row = j[r];
        if (!row.is_array() || row.size() != cols) {
            parse_fail(what + ": row " + std::to_string(r) + " must have " + std::to_string(cols) + " entries");
        }
        for (std::size_t c = 0; c < cols; c++) {
            m(r, c) = entry(row[c], what);
        }
    }
    return m;
}

Integer integer_entry(const Json &v, const std::string &what) {
    if (v.is_number_integer()) {
        return Integer(v.dump());
    }
    if (v.is_string()) {
        return parse_integer(v.get<std::string>());
    }
    parse_fail(what + ": integer entries must be JSON integers or decimal strings");
}

Rational rational_entry(const Json &v, const std::string &what) {
    if (v.is_number_integer()) {
        return Rational(Integer(v.dump()));
    }
    if (v.is_string()) {
        return parse_rational(v.get<std::string>());
    }
    parse_fail(what + ": rational entries must be \"p/q\" strings");
}

}  // namespace

IntMatrix decode_int_matrix(const Json &j, std::size_t rows, std::size_t cols, const std::string &what) {
    return decode_matrix<Integer>(j, rows, cols, what, integer_entry);
}

RatMatrix decode_rat_matrix(const Json &j, std::size_t rows, std::size_t cols, const std::string &what) {
    return decode_matrix<Rational>(j, rows, cols, what, rational_entry);
}

}  // namespace codec

using codec::Json;

GroupElement JobDocument::group_element() const {
    if (!A || !B || !C || !D) {
        throw MoritaError(ErrorCode::ParseError, "document has no group element g");
    }
    try {
        return check_membership(*A, *B, *C, *D);
    } catch (const MoritaError &e) {
        throw MoritaError(ErrorCode::MembershipFailed, std::string("g is not in SO(n, n | Z): ") + e.what(),
                          e.witness());
    }
}

Theta JobDocument::theta_value() const {
    if (!theta) {
        throw MoritaError(ErrorCode::ParseError, "document has no theta");
    }
    return Theta(*theta);
}

namespace {

template <typename T>
T read_option(const Json &options, const char *key, T fallback) {
    if (!options.contains(key)) {
        return fallback;
    }
    const Json &v = options.at(key);
    if constexpr (std::is_floating_point_v<T>) {
        if (!v.is_number()) {
            throw MoritaError(ErrorCode::ParseError, std::string("option ") + key + " must be a number");
        }
    } else {
        if (!v.is_number_unsigned()) {
            throw MoritaError(ErrorCode::ParseError, std::string("option ") + key + " must be a non-negative integer");
        }
    }
    return v.get<T>();
}

}  // namespace

JobDocument parse_job(std::string_view text) {
    Json root;
    try {
        root = Json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw MoritaError(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object()) {
        throw MoritaError(ErrorCode::ParseError, "job document must be a JSON object");
    }
    if (root.contains("version") && root.at("version") != std::string(kDocumentVersion)) {
        throw MoritaError(ErrorCode::ParseError, "unsupported document version " + root.at("version").dump());
    }
    if (!root.contains("n") || !root.at("n").is_number_unsigned()) {
        throw MoritaError(ErrorCode::ParseError, "document needs a positive integer n");
    }
    JobDocument doc;
    doc.n = root.at("n").get<std::size_t>();
    if (doc.n == 0) {
        throw MoritaError(ErrorCode::ParseError, "n must be positive");
    }
    if (root.contains("g")) {
        const Json &g = root.at("g");
        if (!g.is_object()) {
            throw MoritaError(ErrorCode::ParseError, "g must be an object with blocks A, B, C, D");
        }
        for (const char *key : {"A", "B", "C", "D"}) {
            if (!g.contains(key)) {
                throw MoritaError(ErrorCode::ParseError, std::string("g is missing block ") + key);
            }
        }
        doc.A = codec::decode_int_matrix(g.at("A"), doc.n, doc.n, "g.A");
        doc.B = codec::decode_int_matrix(g.at("B"), doc.n, doc.n, "g.B");
        doc.C = codec::decode_int_matrix(g.at("C"), doc.n, doc.n, "g.C");
        doc.D = codec::decode_int_matrix(g.at("D"), doc.n, doc.n, "g.D");
    }
    if (root.contains("theta")) {
        doc.theta = codec::decode_rat_matrix(root.at("theta"), doc.n, doc.n, "theta");
    }
    if (root.contains("options")) {
        const Json &o = root.at("options");
        if (!o.is_object()) {
            throw MoritaError(ErrorCode::ParseError, "options must be an object");
        }
        JobOptions defaults;
        doc.options.seed = read_option<std::uint64_t>(o, "seed", defaults.seed);
        doc.options.word_length = read_option<std::size_t>(o, "word_length", defaults.word_length);
        doc.options.samples = read_option<std::size_t>(o, "samples", defaults.samples);
        doc.options.tolerance = read_option<double>(o, "tolerance", defaults.tolerance);
        doc.options.trials = read_option<std::size_t>(o, "trials", defaults.trials);
    }
    return doc;
}

std::string serialize_job(const JobDocument &doc) {
    Json root{{"version", std::string(kDocumentVersion)}, {"n", doc.n}};
    if (doc.A && doc.B && doc.C && doc.D) {
        root["g"] = Json{
            {"A", codec::encode(*doc.A)}, {"B", codec::encode(*doc.B)}, {"C", codec::encode(*doc.C)},
            {"D", codec::encode(*doc.D)}};
    }
    if (doc.theta) {
        root["theta"] = codec::encode(*doc.theta);
    }
    root["options"] = Json{{"seed", doc.options.seed},
                           {"word_length", doc.options.word_length},
                           {"samples", doc.options.samples},
                           {"tolerance", doc.options.tolerance},
                           {"trials", doc.options.trials}};
    return codec::pretty(root);
}

bool operator==(const JobOptions &a, const JobOptions &b) {
    return a.seed == b.seed && a.word_length == b.word_length && a.samples == b.samples &&
           a.tolerance == b.tolerance && a.trials == b.trials;
}

bool operator==(const JobDocument &a, const JobDocument &b) {
    return a.n == b.n && a.A == b.A && a.B == b.B && a.C == b.C && a.D == b.D && a.theta == b.theta &&
           a.options == b.options;
}

}  // namespace morita

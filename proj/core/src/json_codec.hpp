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

#pragma once

#include <json.hpp>

#include "morita/embedding.hpp"

namespace morita::codec {

using Json = nlohmann::ordered_json;

Json encode(const IntMatrix &m);
Json encode(const RatMatrix &m);
Json encode(const GroupElement &g);
Json encode(const Theta &theta);
Json encode(const TorsionData &td);
Json encode(const EmbeddingData &data);
Json encode(const MoritaChain &chain);
Json encode(const MoritaError &e);

/// Indented JSON with arrays of scalars kept on one line.
std::string pretty(const Json &j);

/// Every certificate name in order with status passed, failed or not_run.
Json certificate_report(const std::vector<Certificate> &entries);

/// Throws ParseError.
IntMatrix decode_int_matrix(const Json &j, std::size_t rows, std::size_t cols, const std::string &what);
RatMatrix decode_rat_matrix(const Json &j, std::size_t rows, std::size_t cols, const std::string &what);

}  // namespace morita::codec

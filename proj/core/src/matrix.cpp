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

#include "morita/matrix.hpp"

#include <sstream>

namespace morita {

RatMatrix to_rational(const IntMatrix &m) {
    RatMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); i++) {
        for (std::size_t j = 0; j < m.cols(); j++) {
            out(i, j) = Rational(m(i, j));
        }
    }
    return out;
}

std::optional<IntMatrix> to_integer(const RatMatrix &m) {
    IntMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); i++) {
        for (std::size_t j = 0; j < m.cols(); j++) {
            if (m(i, j).get_den() != 1) {
                return std::nullopt;
            }
            out(i, j) = m(i, j).get_num();
        }
    }
    return out;
}

bool is_integral(const RatMatrix &m) {
    for (const auto &v : m.data()) {
        if (v.get_den() != 1) {
            return false;
        }
    }
    return true;
}

namespace {

template <typename T>
std::string format_any(const Matrix<T> &m) {
    std::ostringstream out;
    out << "[";
    for (std::size_t i = 0; i < m.rows(); i++) {
        out << (i == 0 ? "[" : " [");
        for (std::size_t j = 0; j < m.cols(); j++) {
            if (j) {
                out << ", ";
            }
            out << to_string(m(i, j));
        }
        out << "]";
        if (i + 1 < m.rows()) {
            out << "\n";
        }
    }
    out << "]";
    return out.str();
}

}  // namespace

std::string format_matrix(const RatMatrix &m) {
    return format_any(m);
}

std::string format_matrix(const IntMatrix &m) {
    return format_any(m);
}

}  // namespace morita

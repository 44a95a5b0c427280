// SPDX-License-Identifier: Apache-2.0
//
// risdc - RIS passive beamforming by cascaded-channel decoupling
// Copyright (C) 2026 The risdc authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef RISDC_MATRIX_JSON_HPP
#define RISDC_MATRIX_JSON_HPP

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "errors.hpp"
#include "linalg.hpp"
#include "regulation.hpp"

namespace risdc
{

using json = nlohmann::json;

// {"rows": R, "cols": C, "data": [[re, im], ...]} with data in row-major order
inline json matrix_to_json(const CMatrix &m)
{
    json data = json::array();
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j)
            data.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline CMatrix matrix_from_json(const json &j, const std::string &what = "matrix")
{
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
        throw ConfigError(what + ": expected an object with fields rows, cols, data");
    if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer())
        throw ConfigError(what + ": rows and cols must be integers");
    const auto rows = j["rows"].get<long long>();
    const auto cols = j["cols"].get<long long>();
    if (rows < 0 || cols < 0)
        throw ConfigError(what + ": negative dimensions");
    const json &data = j["data"];
    if (!data.is_array() || static_cast<long long>(data.size()) != rows * cols)
        throw ConfigError(what + ": data must hold rows*cols = " + std::to_string(rows * cols) + " entries");

    CMatrix m(rows, cols);
    std::size_t k = 0;
    for (Index i = 0; i < rows; ++i)
        for (Index c = 0; c < cols; ++c, ++k)
        {
            const json &e = data[k];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                throw ConfigError(what + ": entry " + std::to_string(k) + " is not a [re, im] number pair");
            m(i, c) = cdouble(e[0].get<double>(), e[1].get<double>());
        }
    return m;
}

inline std::string read_text_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text_file(const std::string &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot write " + path);
    out << text;
    out.flush();
    if (!out)
        throw IoError("write failed for " + path);
}

// Parse errors carry the parser's line/column diagnostic
inline json parse_json_file(const std::string &path)
{
    const std::string text = read_text_file(path);
    try
    {
        return json::parse(text);
    }
    catch (const json::parse_error &e)
    {
        throw ConfigError(path + ": " + e.what());
    }
}

inline CMatrix load_matrix_file(const std::string &path) { return matrix_from_json(parse_json_file(path), path); }

inline json regulation_to_json(const RegulationMatrix &theta)
{
    json j{{"representation", to_string(theta.representation())}, {"n", theta.n()}};
    switch (theta.representation())
    {
    case Representation::full:
        j["matrix"] = matrix_to_json(theta.as_full().matrix);
        break;
    case Representation::diagonal:
        j["phases"] = matrix_to_json(theta.as_diagonal().phases);
        break;
    case Representation::thin:
        j["a"] = matrix_to_json(theta.as_thin().a);
        j["b"] = matrix_to_json(theta.as_thin().b);
        break;
    }
    return j;
}

inline RegulationMatrix regulation_from_json(const json &j)
{
    if (!j.is_object() || !j.contains("representation") || !j["representation"].is_string())
        throw ConfigError("regulation matrix: missing representation tag");
    const std::string rep = j["representation"].get<std::string>();
    if (rep == "full")
        return RegulationMatrix::full(matrix_from_json(j.at("matrix"), "theta.matrix"));
    if (rep == "diagonal")
    {
        const CMatrix p = matrix_from_json(j.at("phases"), "theta.phases");
        if (p.cols() != 1)
            throw ConfigError("theta.phases must be a column");
        return RegulationMatrix::diagonal(p.col(0));
    }
    if (rep == "thin")
        return RegulationMatrix::thin(matrix_from_json(j.at("a"), "theta.a"), matrix_from_json(j.at("b"), "theta.b"));
    throw ConfigError("regulation matrix: unknown representation '" + rep + "'");
}

} // namespace risdc

#endif

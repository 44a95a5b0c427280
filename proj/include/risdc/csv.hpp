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

#ifndef RISDC_CSV_HPP
#define RISDC_CSV_HPP

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "errors.hpp"
#include "matrix_json.hpp"
#include "sweep.hpp"

namespace risdc
{

inline constexpr const char *kRecordHeader = "method,n_ris,trial,rate_bps_hz,sum_rate_bps_hz,wall_time_s";
inline constexpr const char *kSummaryHeader = "method,n_ris,mean_rate,std_rate,normalized_mean";

// 17 significant digits, enough to round-trip any double
inline std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// One serialized row of the per-trial table
struct CsvRow
{
    std::string method;
    long long n_ris = 0;
    unsigned long long trial = 0;
    double rate = 0.0;
    double sum_rate = 0.0;
    double wall_time_s = 0.0;
};

inline CsvRow to_row(const TrialRecord &r)
{
    return {to_string(r.method), static_cast<long long>(r.n_ris), r.trial, r.rate, r.sum_rate, r.wall_time_s};
}

inline std::string format_rows(std::vector<CsvRow> rows)
{
    std::stable_sort(rows.begin(), rows.end(), [](const CsvRow &a, const CsvRow &b) {
        return std::tie(a.method, a.n_ris, a.trial) < std::tie(b.method, b.n_ris, b.trial);
    });
    std::string out = std::string(kRecordHeader) + "\n";
    for (const auto &r : rows)
        out += r.method + "," + std::to_string(r.n_ris) + "," + std::to_string(r.trial) + "," + format_double(r.rate) +
               "," + format_double(r.sum_rate) + "," + format_double(r.wall_time_s) + "\n";
    return out;
}

inline std::string format_summary(const std::vector<Aggregate> &aggregates)
{
    std::string out = std::string(kSummaryHeader) + "\n";
    for (const auto &a : aggregates)
        out += std::string(to_string(a.method)) + "," + std::to_string(a.n_ris) + "," + format_double(a.mean) + "," +
               format_double(a.std_dev) + "," + format_double(a.normalized_mean) + "\n";
    return out;
}

inline std::string summary_path(const std::string &path) { return path + ".summary.csv"; }

// Writes <path> with one row per record and <path>.summary.csv with the aggregates
inline void write_csv(const SweepResult &result, const std::string &path)
{
    std::vector<CsvRow> rows;
    rows.reserve(result.records.size());
    for (const auto &r : result.records)
        rows.push_back(to_row(r));
    write_text_file(path, format_rows(std::move(rows)));
    write_text_file(summary_path(path), format_summary(result.aggregates));
}

inline void write_csv_rows(const std::vector<CsvRow> &rows, const std::string &path)
{
    write_text_file(path, format_rows(rows));
}

inline std::vector<CsvRow> read_csv(const std::string &path)
{
    std::istringstream in(read_text_file(path));
    std::string line;
    if (!std::getline(in, line) || line != kRecordHeader)
        throw ConfigError(path + ": missing or unexpected header");

    auto parse_double = [&](const std::string &s, std::size_t lineno) {
        errno = 0;
        char *end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (end == s.c_str() || *end != '\0' || errno == ERANGE)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": invalid number '" + s + "'");
        return v;
    };

    std::vector<CsvRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line))
    {
        ++lineno;
        if (line.empty())
            continue;
        std::vector<std::string> f;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ','))
            f.push_back(cell);
        if (f.size() != 6)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 6 fields, got " + std::to_string(f.size()));
        CsvRow r;
        r.method = f[0];
        try
        {
            r.n_ris = std::stoll(f[1]);
            r.trial = std::stoull(f[2]);
        }
        catch (const std::exception &)
        {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": invalid integer field");
        }
        r.rate = parse_double(f[3], lineno);
        r.sum_rate = parse_double(f[4], lineno);
        r.wall_time_s = parse_double(f[5], lineno);
        rows.push_back(std::move(r));
    }
    return rows;
}

} // namespace risdc

#endif

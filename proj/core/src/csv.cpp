// SPDX-License-Identifier: Apache-2.0
#include "risfso/csv.hpp"

#include "risfso/specfun.hpp"

#include <cmath>
#include <cstdio>

#ifndef RISFSO_VERSION
#define RISFSO_VERSION "0.0.0"
#endif

namespace risfso {

std::string library_version()
{
    return RISFSO_VERSION;
}

std::string fmt_num(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string fmt_int(long long v)
{
    return std::to_string(v);
}

std::string csv_escape(const std::string& field)
{
    if (field.find_first_of(",\"\n") == std::string::npos) {
        return field;
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns, std::uint64_t seed)
    : path_(path), out_(path, std::ios::binary), columns_(columns.size())
{
    if (!out_) {
        throw DomainError("cannot open '" + path + "' for writing");
    }
    out_ << "# risfso " << library_version() << " seed=" << seed << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out_ << (i ? "," : "") << csv_escape(columns[i]);
    }
    out_ << '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells)
{
    if (cells.size() != columns_) {
        throw DomainError("CSV row width does not match the header of '" + path_ + "'");
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        out_ << (i ? "," : "") << csv_escape(cells[i]);
    }
    out_ << '\n';
    out_.flush();
    ++rows_;
}

void CsvWriter::close()
{
    out_.close();
}

Manifest::Manifest(std::string dir, std::string experiment, std::uint64_t seed)
    : dir_(std::move(dir)), experiment_(std::move(experiment)), seed_(seed)
{
}

void Manifest::add(const std::string& file, std::size_t rows)
{
    files_.emplace_back(file, rows);
}

void Manifest::fail(const std::string& stage, const std::string& message)
{
    fail_stage_ = stage;
    fail_message_ = message;
}

void Manifest::write(const std::string& status) const
{
    std::ofstream out(dir_ + "/MANIFEST", std::ios::binary);
    out << "experiment=" << experiment_ << '\n';
    out << "version=" << library_version() << '\n';
    out << "seed=" << seed_ << '\n';
    out << "status=" << status << '\n';
    if (!fail_stage_.empty()) {
        out << "failed_at=" << fail_stage_ << '\n';
        out << "reason=" << fail_message_ << '\n';
    }
    for (const auto& [f, n] : files_) {
        out << "file=" << f << " rows=" << n << '\n';
    }
}

} // namespace risfso

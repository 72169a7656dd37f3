// SPDX-License-Identifier: Apache-2.0
// CSV emission with fixed 9-significant-digit formatting.
#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace risfso {

std::string library_version();

// %.9g; NaN and infinities print as nan, inf and -inf.
std::string fmt_num(double v);
std::string fmt_int(long long v);

// Quote a field when it contains a comma, quote or newline.
std::string csv_escape(const std::string& field);

class CsvWriter {
public:
    // Writes the '#' provenance comment (tool version and seed) and the header.
    CsvWriter(const std::string& path, const std::vector<std::string>& columns, std::uint64_t seed);

    void row(const std::vector<std::string>& cells);
    std::size_t rows() const { return rows_; }
    const std::string& path() const { return path_; }
    void close();

private:
    std::string path_;
    std::ofstream out_;
    std::size_t columns_;
    std::size_t rows_ = 0;
};

// MANIFEST listing every file written by a run and where it stopped.
class Manifest {
public:
    Manifest(std::string dir, std::string experiment, std::uint64_t seed);

    void add(const std::string& file, std::size_t rows);
    void fail(const std::string& stage, const std::string& message);
    // Writes dir/MANIFEST; status is "ok", "validation-failed" or "error".
    void write(const std::string& status) const;

private:
    std::string dir_;
    std::string experiment_;
    std::uint64_t seed_;
    std::vector<std::pair<std::string, std::size_t>> files_;
    std::string fail_stage_;
    std::string fail_message_;
};

} // namespace risfso

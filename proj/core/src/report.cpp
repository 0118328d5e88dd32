#include "cryowire/report.hpp"

#include "cryowire/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>

#include <json.hpp>

namespace cryowire {

std::string fmt_sci(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (std::isnan(value)) throw range_error("refusing to emit NaN");
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.5e", value);
    return buf;
}

CsvWriter::CsvWriter(const std::string& tool_version, const std::string& config_digest) {
    buffer_ += "# cryowire " + tool_version + "\n";
    buffer_ += "# config_sha256: " + config_digest + "\n";
}

void CsvWriter::comment(const std::string& key, const std::string& value) {
    if (header_written_) throw validation_error("CSV comments must precede the header");
    buffer_ += "# " + key + ": " + value + "\n";
}

void CsvWriter::header(const std::vector<std::string>& columns) {
    if (header_written_) throw validation_error("CSV header already written");
    header_written_ = true;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) buffer_ += ",";
        buffer_ += columns[i];
    }
    buffer_ += "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (!header_written_) throw validation_error("CSV rows must follow the header");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) buffer_ += ",";
        buffer_ += cells[i];
    }
    buffer_ += "\n";
}

void CsvWriter::write_to(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw validation_error("cannot write '" + path + "'");
    out << buffer_;
}

std::string render_table(const std::vector<std::string>& columns,
                         const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(columns.size(), 0);
    for (std::size_t i = 0; i < columns.size(); ++i) width[i] = columns[i].size();
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) {
            width[i] = std::max(width[i], row[i].size());
        }
    }
    std::string out;
    const auto emit = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += "  ";
            out += cells[i];
            out.append(width[i] - cells[i].size(), ' ');
        }
        while (!out.empty() && out.back() == ' ') out.pop_back();
        out += "\n";
    };
    emit(columns);
    std::string rule;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) rule += "  ";
        rule.append(width[i], '-');
    }
    out += rule + "\n";
    for (const auto& row : rows) emit(row);
    return out;
}

std::string render_manifest(const std::string& tool_version, const std::string& config_digest,
                            const std::string& timestamp_utc,
                            const std::vector<std::string>& output_files) {
    nlohmann::ordered_json j;
    j["tool_version"] = tool_version;
    j["config_sha256"] = config_digest;
    j["timestamp_utc"] = timestamp_utc;
    j["outputs"] = output_files;
    return j.dump(2) + "\n";
}

std::string utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

}  // namespace cryowire

#pragma once

#include <string>
#include <vector>

namespace cryowire {

/// Numeric formatting contract for all emitted data: scientific notation,
/// six significant digits, locale-independent; infinities as "inf"/"-inf".
std::string fmt_sci(double value);

/// CSV with '#'-prefixed manifest comment lines above a single header row.
/// Identical inputs produce identical bytes.
class CsvWriter {
  public:
    CsvWriter(const std::string& tool_version, const std::string& config_digest);

    void comment(const std::string& key, const std::string& value);
    void header(const std::vector<std::string>& columns);
    void row(const std::vector<std::string>& cells);

    const std::string& str() const { return buffer_; }
    void write_to(const std::string& path) const;

  private:
    std::string buffer_;
    bool header_written_ = false;
};

/// Fixed-width text table for stdout; same cell strings as the CSVs.
std::string render_table(const std::vector<std::string>& columns,
                         const std::vector<std::vector<std::string>>& rows);

/// Run manifest written next to the CSVs: tool version, config digest,
/// timestamp, and the emitted file list. The timestamp lives only here so
/// the data files stay byte-deterministic.
std::string render_manifest(const std::string& tool_version, const std::string& config_digest,
                            const std::string& timestamp_utc,
                            const std::vector<std::string>& output_files);

/// Current UTC time as ISO-8601; empty string inputs in render_manifest are
/// preserved verbatim (used by tests for fixed output).
std::string utc_timestamp();

}  // namespace cryowire

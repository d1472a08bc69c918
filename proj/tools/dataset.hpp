#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace iacm::cli {

/// Malformed input files, unknown columns, bad environment tags.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Comma-separated with a header row. Fields may be double-quoted ("" escapes
/// a quote). Every row must have as many fields as the header.
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

/// Resolves a column by header name, or by 0-based position when `name` is a
/// plain integer that does not match a header.
std::size_t column_index(const CsvTable& table, const std::string& name);

std::vector<std::string> column_values(const CsvTable& table, std::size_t index);

struct EncodedColumn {
    std::vector<int> codes;
    std::size_t bins = 0;
    // How the raw cells were mapped: "integer", "quantile" or "categorical".
    std::string encoding;
};

/// Default range size when none is requested: 2 for columns with at most two
/// distinct values, 3 otherwise.
std::size_t default_bins(const std::vector<std::string>& raw);

/// Maps raw cells to categories in [0, bins):
///  - integers already in [0, bins) are used as they are;
///  - other numeric columns are binned by equal-frequency quantiles;
///  - non-numeric columns map sorted distinct labels to 0..k-1 (k <= bins).
EncodedColumn encode_column(const std::vector<std::string>& raw, std::optional<std::size_t> bins);

enum class TagKind { Observational, DoX, DoY, DoZ };

struct EnvTag {
    TagKind kind = TagKind::Observational;
    std::string value;  // raw cell value the tag fixes; empty for "obs"

    friend bool operator==(const EnvTag&, const EnvTag&) = default;
};

/// "obs", "do:<v>" (same as "do:x=<v>"), "do:x=<v>", "do:y=<v>", "do:z=<v>".
EnvTag parse_env_tag(const std::string& cell);

/// Numeric cells compare by value, everything else by exact text.
bool same_cell_value(const std::string& a, const std::string& b);

} // namespace iacm::cli

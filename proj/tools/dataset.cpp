#include "dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include "iacm/distribution.hpp"

namespace iacm::cli {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::optional<double> parse_number(const std::string& text) {
    if (text.empty()) return std::nullopt;
    const char* begin = text.data();
    const char* end = text.data() + text.size();
    if (*begin == '+') ++begin;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) return std::nullopt;
    return v;
}

// Splits one logical record; `line` may continue onto further physical lines
// while a quoted field is open.
void split_record(std::istream& in, std::string line, std::vector<std::string>& fields, std::size_t line_no) {
    fields.clear();
    std::string field;
    bool quoted = false;
    bool was_quoted = false;
    for (;;) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            const char c = line[i];
            if (quoted) {
                if (c == '"') {
                    if (i + 1 < line.size() && line[i + 1] == '"') {
                        field += '"';
                        ++i;
                    } else {
                        quoted = false;
                    }
                } else {
                    field += c;
                }
            } else if (c == '"') {
                quoted = true;
                was_quoted = true;
            } else if (c == ',') {
                fields.push_back(was_quoted ? field : trim(field));
                field.clear();
                was_quoted = false;
            } else {
                field += c;
            }
        }
        if (!quoted) break;
        if (!std::getline(in, line)) {
            throw InputError("line " + std::to_string(line_no) + ": unterminated quoted field");
        }
        field += '\n';
    }
    fields.push_back(was_quoted ? field : trim(field));
}

} // namespace

CsvTable read_csv(std::istream& in) {
    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> fields;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        split_record(in, line, fields, line_no);
        if (table.header.empty()) {
            table.header = fields;
            continue;
        }
        if (fields.size() != table.header.size()) {
            throw InputError("line " + std::to_string(line_no) + ": expected " + std::to_string(table.header.size()) +
                             " fields, found " + std::to_string(fields.size()));
        }
        table.rows.push_back(fields);
    }
    if (table.header.empty()) throw InputError("empty CSV input: no header row");
    return table;
}

CsvTable read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    return read_csv(in);
}

std::size_t column_index(const CsvTable& table, const std::string& name) {
    const auto it = std::find(table.header.begin(), table.header.end(), name);
    if (it != table.header.end()) return static_cast<std::size_t>(it - table.header.begin());
    std::size_t pos = 0;
    auto [ptr, ec] = std::from_chars(name.data(), name.data() + name.size(), pos);
    if (ec == std::errc() && ptr == name.data() + name.size() && pos < table.header.size()) return pos;
    throw InputError("unknown column '" + name + "'");
}

std::vector<std::string> column_values(const CsvTable& table, std::size_t index) {
    std::vector<std::string> out;
    out.reserve(table.rows.size());
    for (const auto& row : table.rows) out.push_back(row.at(index));
    return out;
}

std::size_t default_bins(const std::vector<std::string>& raw) {
    std::set<std::string> distinct;
    for (const std::string& v : raw) {
        const auto num = parse_number(v);
        // Normalize numeric spellings so "1" and "1.0" count once.
        distinct.insert(num ? std::to_string(*num) : v);
        if (distinct.size() > 2) return 3;
    }
    return 2;
}

EncodedColumn encode_column(const std::vector<std::string>& raw, std::optional<std::size_t> bins) {
    EncodedColumn out;
    out.bins = bins.value_or(default_bins(raw));
    if (out.bins < 2) throw InputError("range size must be at least 2");

    std::vector<double> numbers;
    numbers.reserve(raw.size());
    for (const std::string& v : raw) {
        const auto num = parse_number(v);
        if (!num) break;
        numbers.push_back(*num);
    }

    if (!raw.empty() && numbers.size() == raw.size()) {
        const bool small_ints = std::all_of(numbers.begin(), numbers.end(), [&](double v) {
            return v == std::floor(v) && v >= 0.0 && v < static_cast<double>(out.bins);
        });
        if (small_ints) {
            out.encoding = "integer";
            for (double v : numbers) out.codes.push_back(static_cast<int>(v));
            return out;
        }
        out.encoding = "quantile";
        out.codes = discretize_equal_frequency(numbers, static_cast<int>(out.bins)).labels;
        return out;
    }

    std::map<std::string, int> labels;
    for (const std::string& v : raw) labels.emplace(v, 0);
    if (labels.size() > out.bins) {
        throw InputError("column has " + std::to_string(labels.size()) + " categories but the range size is " +
                         std::to_string(out.bins));
    }
    int next = 0;
    for (auto& [label, code] : labels) code = next++;
    out.encoding = "categorical";
    for (const std::string& v : raw) out.codes.push_back(labels.at(v));
    return out;
}

EnvTag parse_env_tag(const std::string& cell) {
    const std::string tag = trim(cell);
    if (tag == "obs") return {};
    if (tag.rfind("do:", 0) != 0 || tag.size() == 3) {
        throw InputError("bad environment tag '" + cell + "' (expected obs or do:<value>)");
    }
    const std::string body = tag.substr(3);
    const auto eq = body.find('=');
    if (eq == std::string::npos) return {TagKind::DoX, body};
    const std::string var = body.substr(0, eq);
    const std::string value = body.substr(eq + 1);
    if (value.empty()) throw InputError("bad environment tag '" + cell + "': missing value");
    if (var == "x" || var == "X") return {TagKind::DoX, value};
    if (var == "y" || var == "Y") return {TagKind::DoY, value};
    if (var == "z" || var == "Z") return {TagKind::DoZ, value};
    throw InputError("bad environment tag '" + cell + "': unknown variable '" + var + "'");
}

bool same_cell_value(const std::string& a, const std::string& b) {
    const auto na = parse_number(a);
    const auto nb = parse_number(b);
    if (na && nb) return *na == *nb;
    return a == b;
}

} // namespace iacm::cli

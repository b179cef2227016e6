#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace mallows {

using Cell = std::variant<std::int64_t, double, std::string>;

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string cell_to_string(const Cell& c) {
    if (std::holds_alternative<std::int64_t>(c))
        return std::to_string(std::get<std::int64_t>(c));
    if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
    return std::get<std::string>(c);
}

// RFC 4180 quoting; applied only when the value needs it.
inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default: out += ch;
        }
    }
    return out;
}

// Key/value metadata identifying a run: model, parameters, seed, version,
// build id. Emitted at the top of every output file so the run can be
// reproduced exactly.
struct RunMetadata {
    std::vector<std::pair<std::string, std::string>> fields;

    void add(std::string key, std::string value) {
        fields.emplace_back(std::move(key), std::move(value));
    }
    void add(std::string key, std::int64_t value) {
        fields.emplace_back(std::move(key), std::to_string(value));
    }
    void add(std::string key, std::uint64_t value) {
        fields.emplace_back(std::move(key), std::to_string(value));
    }
    void add(std::string key, double value) {
        fields.emplace_back(std::move(key), format_double(value));
    }
};

// Column-major table with one writer per output format. CSV uses '#'-prefixed
// metadata lines, a mandatory header row, '.' decimals, no locale
// dependence; JSON is {"meta": {...}, "rows": [ {...}, ... ]}.
class TableWriter {
public:
    explicit TableWriter(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void add_row(std::vector<Cell> row) {
        if (row.size() != columns_.size())
            throw std::invalid_argument("TableWriter: row width mismatch");
        rows_.push_back(std::move(row));
    }

    std::size_t row_count() const noexcept { return rows_.size(); }

    void write_csv(std::ostream& os, const RunMetadata& meta) const {
        for (const auto& [k, v] : meta.fields) os << "# " << k << ": " << v << "\r\n";
        for (std::size_t c = 0; c < columns_.size(); ++c)
            os << (c ? "," : "") << csv_escape(columns_[c]);
        os << "\r\n";
        for (const auto& row : rows_) {
            for (std::size_t c = 0; c < row.size(); ++c)
                os << (c ? "," : "") << csv_escape(cell_to_string(row[c]));
            os << "\r\n";
        }
    }

    void write_json(std::ostream& os, const RunMetadata& meta) const {
        os << "{\n  \"meta\": {";
        for (std::size_t i = 0; i < meta.fields.size(); ++i) {
            os << (i ? ",\n    " : "\n    ") << '"' << json_escape(meta.fields[i].first)
               << "\": \"" << json_escape(meta.fields[i].second) << '"';
        }
        os << "\n  },\n  \"rows\": [";
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            os << (r ? ",\n    " : "\n    ") << '{';
            for (std::size_t c = 0; c < columns_.size(); ++c) {
                os << (c ? ", " : "") << '"' << json_escape(columns_[c]) << "\": ";
                const Cell& cell = rows_[r][c];
                if (std::holds_alternative<std::string>(cell))
                    os << '"' << json_escape(std::get<std::string>(cell)) << '"';
                else
                    os << cell_to_string(cell);
            }
            os << '}';
        }
        os << "\n  ]\n}\n";
    }

    // Writes to `path`; on failure the partial file is removed.
    void write_file(const std::string& path, const RunMetadata& meta, bool json) const {
        std::ofstream os(path, std::ios::binary);
        if (!os) throw std::runtime_error("cannot open output file: " + path);
        if (json)
            write_json(os, meta);
        else
            write_csv(os, meta);
        os.flush();
        if (!os) {
            os.close();
            std::remove(path.c_str());
            throw std::runtime_error("failed while writing: " + path);
        }
    }

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

} // namespace mallows

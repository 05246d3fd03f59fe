#include "liou/report.hpp"

#include <cstdio>
#include <cstdlib>

#include "json.hpp"

namespace liou {

std::string fmt_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

std::string cell_text(const Table::Cell& cell) {
    switch (cell.index()) {
        case 0:
            return std::to_string(std::get<std::int64_t>(cell));
        case 1:
            return std::to_string(std::get<std::uint64_t>(cell));
        case 2:
            return fmt_real(std::get<double>(cell));
        default:
            return std::get<std::string>(cell);
    }
}

}  // namespace

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ',';
        out += table.columns[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += cell_text(row[c]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const std::string& command,
                    const std::vector<std::pair<std::string, std::string>>& params,
                    const Table& table) {
    nlohmann::ordered_json doc;
    doc["command"] = command;
    nlohmann::ordered_json jparams = nlohmann::ordered_json::object();
    for (const auto& [k, v] : params) jparams[k] = v;
    doc["params"] = std::move(jparams);

    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json jrow = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < row.size() && c < table.columns.size(); ++c) {
            const auto& cell = row[c];
            switch (cell.index()) {
                case 0:
                    jrow[table.columns[c]] = std::get<std::int64_t>(cell);
                    break;
                case 1:
                    jrow[table.columns[c]] = std::get<std::uint64_t>(cell);
                    break;
                case 2:
                    // Round through the 12-digit text so both serializations
                    // carry the same value.
                    jrow[table.columns[c]] =
                        std::strtod(fmt_real(std::get<double>(cell)).c_str(), nullptr);
                    break;
                default:
                    jrow[table.columns[c]] = std::get<std::string>(cell);
            }
        }
        rows.push_back(std::move(jrow));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

}  // namespace liou

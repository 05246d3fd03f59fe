#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace liou {

// 12 significant digits, the fixed numeric-output convention.
std::string fmt_real(double v);

// One tabular result: fixed column order, one row per record.
struct Table {
    using Cell = std::variant<std::int64_t, std::uint64_t, double, std::string>;

    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    template <class... Args>
    void add_row(Args&&... args) {
        rows.push_back({Cell(std::forward<Args>(args))...});
    }
};

std::string to_csv(const Table& table);

// Single object per run: {"command", "params", "rows"}; rows mirror the CSV
// columns, reals rounded through the same 12-digit formatting.
std::string to_json(const std::string& command,
                    const std::vector<std::pair<std::string, std::string>>& params,
                    const Table& table);

}  // namespace liou

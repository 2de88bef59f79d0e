#pragma once

#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace chaincli {

using Cell = std::variant<double, long long, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string format_number(double x);  // 17 significant digits
std::string to_csv(const Table& t);
nlohmann::json to_json(const Table& t, const nlohmann::json& metadata);

// gnuplot script that plots columns of `csv_path`; never renders anything itself
std::string gnuplot_script(const std::string& csv_path, const std::string& title, const std::string& plot_body);

// write-then-rename, so readers never see a partial file
void write_atomic(const std::string& path, const std::string& content);

}  // namespace chaincli

#include "output.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace chaincli {

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::string cell_text(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
    if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
    const auto& s = std::get<std::string>(c);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + "\"";
}

}  // namespace

std::string to_csv(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + cell_text(row[i]);
        out += '\n';
    }
    return out;
}

nlohmann::json to_json(const Table& t, const nlohmann::json& metadata) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : t.rows) {
        nlohmann::json r = nlohmann::json::object();
        for (std::size_t i = 0; i < row.size() && i < t.columns.size(); ++i)
            std::visit([&](const auto& v) { r[t.columns[i]] = v; }, row[i]);
        rows.push_back(std::move(r));
    }
    return {{"metadata", metadata}, {"columns", t.columns}, {"rows", rows}};
}

std::string gnuplot_script(const std::string& csv_path, const std::string& title, const std::string& plot_body) {
    std::string s;
    s += "# generated by chaincli\n";
    s += "set datafile separator ','\n";
    s += "set key autotitle columnhead\n";
    s += "set title '" + title + "'\n";
    s += "data = '" + csv_path + "'\n";
    s += plot_body;
    if (s.back() != '\n') s += '\n';
    return s;
}

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        f << content;
        f.flush();
        if (!f) throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw std::runtime_error("cannot rename to '" + path + "': " + ec.message());
    }
}

}  // namespace chaincli

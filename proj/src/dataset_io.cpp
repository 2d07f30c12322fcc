#include "ddm/dataset_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ddm {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    return out;
}

} // namespace

std::string to_csv(const Dataset& ds) {
    std::string out;
    for (const auto& [k, v] : ds.metadata) out += "# " + k + " = " + v + "\n";
    for (std::size_t c = 0; c < ds.names.size(); ++c) {
        if (c) out += ',';
        out += ds.names[c];
    }
    out += '\n';
    char buf[40];
    for (std::size_t r = 0; r < ds.rows(); ++r) {
        for (std::size_t c = 0; c < ds.columns.size(); ++c) {
            if (c) out += ',';
            std::snprintf(buf, sizeof buf, "%.16e", ds.columns[c][r]);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

Dataset parse_csv(const std::string& text) {
    Dataset ds;
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            const std::string body = trim(line.substr(1));
            const auto eq = body.find('=');
            if (eq == std::string::npos) continue;
            ds.metadata.emplace_back(trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
            continue;
        }
        const auto cells = split_commas(line);
        if (!header_seen) {
            ds.names = cells;
            ds.columns.assign(cells.size(), {});
            header_seen = true;
            continue;
        }
        if (cells.size() != ds.names.size()) throw std::runtime_error("CSV row has the wrong number of cells");
        for (std::size_t c = 0; c < cells.size(); ++c) ds.columns[c].push_back(std::stod(cells[c]));
    }
    if (!header_seen) throw std::runtime_error("CSV has no header row");
    return ds;
}

void write_csv(const Dataset& ds, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << to_csv(ds);
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

Dataset read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str());
}

std::string plot_script(const Dataset& ds, const std::string& csv_name, const std::string& title) {
    std::string s;
    s += "# run from the output directory: gnuplot -p " + title + ".plot\n";
    s += "set datafile separator ','\n";
    s += "set datafile commentschars '#'\n";
    s += "set key outside right\n";
    s += "set title '" + title + "'\n";
    s += "set xlabel '" + (ds.names.empty() ? std::string("x") : ds.names.front()) + "'\n";
    s += "set grid\n";
    s += "csv = '" + csv_name + "'\n";
    s += "plot";
    for (std::size_t c = 1; c < ds.names.size(); ++c) {
        s += (c == 1 ? " " : ", \\\n     ");
        s += "csv using 1:" + std::to_string(c + 1) + " with lines title '" + ds.names[c] + "'";
    }
    s += "\n";
    return s;
}

} // namespace ddm

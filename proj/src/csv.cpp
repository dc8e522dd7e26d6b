#include "fracline/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fracline {

namespace {

void atomic_write(const std::string& path, const std::string& body) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        out << body;
        if (!out.flush()) throw std::runtime_error("short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
    }
}

}  // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_field_csv(const std::string& path, const SolutionField& field,
                     const std::string& value_column) {
    std::string body = "x,t," + value_column + "\n";
    for (std::size_t k = 0; k < field.t_grid.size(); ++k)
        for (std::size_t i = 0; i < field.x_grid.size(); ++i) {
            body += format_number(field.x_grid[i]);
            body += ',';
            body += format_number(field.t_grid[k]);
            body += ',';
            body += format_number(field.values[k][i]);
            body += '\n';
        }
    atomic_write(path, body);
}

void write_report(const std::string& path,
                  const std::vector<std::pair<std::string, std::string>>& kv) {
    std::string body;
    for (const auto& [key, value] : kv) body += key + "=" + value + "\n";
    atomic_write(path, body);
}

GridFunction read_initial_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || (line != "x,g" && line != "x,g\r"))
        throw std::runtime_error(path + ": expected header 'x,g'");
    std::vector<double> xs, gs;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        std::istringstream row(line);
        std::string sx, sg;
        if (!std::getline(row, sx, ',') || !std::getline(row, sg))
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected two comma-separated fields");
        std::size_t used = 0;
        const double x = std::stod(sx, &used);
        const double g = std::stod(sg);
        if (!std::isfinite(x) || !std::isfinite(g))
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": non-finite value");
        xs.push_back(x);
        gs.push_back(g);
    }
    if (xs.size() < 2) throw std::runtime_error(path + ": need at least 2 rows");
    if (xs.front() != 0.0)
        throw std::runtime_error(path + ": grid must start at x = 0");
    const double h = xs[1] - xs[0];
    if (!(h > 0.0)) throw std::runtime_error(path + ": x must be increasing");
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double d = xs[i] - xs[i - 1];
        if (!(d > 0.0)) throw std::runtime_error(path + ": x must be increasing");
        if (std::abs(d - h) > 1e-9 * std::max(1.0, std::abs(h)))
            throw std::runtime_error(path + ": x must be uniformly spaced");
    }
    return GridFunction(h, std::move(gs));
}

}  // namespace fracline

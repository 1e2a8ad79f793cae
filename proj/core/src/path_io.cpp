#include "cadlag/path_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace cadlag {

std::string format_double(double v) {
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        double back = 0.0;
        std::sscanf(buf, "%lf", &back);
        if (back == v) return buf;
    }
    return buf;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error(std::string("path csv: bad ") + what + " '" + s + "'");
    }
}

} // namespace

StepPath read_path_csv(std::istream& in) {
    std::string line;
    bool have_header = false;
    std::size_t dim = 0;
    bool have_horizon = false;
    double horizon = 0.0;
    bool have_initial = false;
    Vec initial;
    std::vector<std::pair<double, Vec>> jumps;

    while (std::getline(in, line)) {
        std::string trimmed = line;
        while (!trimmed.empty() && (trimmed.back() == '\r' || trimmed.back() == ' ')) trimmed.pop_back();
        std::size_t start = trimmed.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        if (trimmed[start] == '#') {
            std::size_t eq = trimmed.find("T=", start);
            if (eq != std::string::npos) {
                horizon = parse_double(trimmed.substr(eq + 2), "horizon");
                have_horizon = true;
            }
            continue;
        }
        if (!have_header) {
            auto cols = split_csv(trimmed);
            if (cols.size() < 2 || cols[0] != "t")
                throw std::runtime_error("path csv: expected header 't,v1,...,vd'");
            dim = cols.size() - 1;
            have_header = true;
            continue;
        }
        auto cols = split_csv(trimmed);
        if (cols.size() != dim + 1)
            throw std::runtime_error("path csv: row has wrong number of columns");
        double t = parse_double(cols[0], "time");
        Vec v(dim);
        for (std::size_t i = 0; i < dim; ++i) v[i] = parse_double(cols[i + 1], "value");
        if (!have_initial) {
            if (t != 0.0) throw std::runtime_error("path csv: first row must have t=0");
            initial = std::move(v);
            have_initial = true;
        } else {
            if (!jumps.empty() && t <= jumps.back().first)
                throw std::runtime_error("path csv: jump times must be strictly increasing");
            jumps.emplace_back(t, std::move(v));
        }
    }
    if (!have_header) throw std::runtime_error("path csv: missing header");
    if (!have_initial) throw std::runtime_error("path csv: missing initial row (t=0)");
    if (!have_horizon) throw std::runtime_error("path csv: missing '# T=<horizon>' line");
    return StepPath(dim, horizon, std::move(initial), std::move(jumps));
}

StepPath read_path_csv_file(const std::string& filename) {
    std::ifstream in(filename);
    if (!in) throw std::runtime_error("cannot open path csv '" + filename + "'");
    return read_path_csv(in);
}

void write_path_csv(std::ostream& out, const StepPath& path) {
    out << "t";
    for (std::size_t i = 1; i <= path.dimension(); ++i) out << ",v" << i;
    out << "\n";
    auto row = [&](double t, const Vec& v) {
        out << format_double(t);
        for (double e : v) out << "," << format_double(e);
        out << "\n";
    };
    row(0.0, path.initial_value());
    for (std::size_t k = 0; k < path.jump_count(); ++k)
        row(path.jump_time(k), path.value_after_jump(k));
    out << "# T=" << format_double(path.horizon()) << "\n";
}

void write_path_csv_file(const std::string& filename, const StepPath& path) {
    std::ofstream out(filename);
    if (!out) throw std::runtime_error("cannot write path csv '" + filename + "'");
    write_path_csv(out, path);
}

} // namespace cadlag

#include "emit.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

namespace diracred::cli {

namespace {

constexpr int entry_cols = 32;

std::string entry_header() {
    std::string h;
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j) {
            h += " Re" + std::to_string(i) + std::to_string(j);
            h += " Im" + std::to_string(i) + std::to_string(j);
        }
    return h;
}

void append_entries(std::string& out, const Matrix4cd& m) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            out += ' ';
            out += num17(m(i, j).real());
            out += ' ';
            out += num17(m(i, j).imag());
        }
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

double parse_num(const std::string& tok, int line_no, std::size_t col) {
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(tok.c_str(), &end);
    if (errno != 0 || end == nullptr || *end != '\0')
        throw CliError(3, "line " + std::to_string(line_no) + ": field " +
                              std::to_string(col + 1) + " is not a number: '" + tok + "'");
    return v;
}

}  // namespace

std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw CliError(3, "cannot open for writing: " + path);
    f << content;
    f.flush();
    if (!f) throw CliError(3, "write failed: " + path);
}

std::string potential_table(const Potential4x4& V, const Grid1D& g) {
    std::string out = "ix x" + entry_header() + "\n";
    for (int k = 0; k < g.size(); ++k) {
        const Point p = g.point(k);
        out += std::to_string(k);
        out += ' ';
        out += num17(p.x);
        append_entries(out, V(p));
        out += '\n';
    }
    return out;
}

std::string potential_table(const Potential4x4& V, const Grid2D& g) {
    std::string out = "ix iy x y" + entry_header() + "\n";
    for (int k = 0; k < g.size(); ++k) {
        const Point p = g.point(k);
        out += std::to_string(k % g.nx);
        out += ' ';
        out += std::to_string(k / g.nx);
        out += ' ';
        out += num17(p.x);
        out += ' ';
        out += num17(p.y);
        append_entries(out, V(p));
        out += '\n';
    }
    return out;
}

std::string potential_table(const Potential4x4& V, const GridTX& g) {
    std::string out = "it ix t x" + entry_header() + "\n";
    for (int k = 0; k < g.size(); ++k) {
        const Point p = g.point(k);
        out += std::to_string(k / g.nx);
        out += ' ';
        out += std::to_string(k % g.nx);
        out += ' ';
        out += num17(p.t);
        out += ' ';
        out += num17(p.x);
        append_entries(out, V(p));
        out += '\n';
    }
    return out;
}

PotentialSamples read_potential_table(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw CliError(3, "cannot open: " + path);
    std::string line;
    if (!std::getline(f, line)) throw CliError(3, path + ": empty file");
    const std::vector<std::string> header = split_ws(line);

    // The axis prefix decides how rows map to points.
    enum class Layout { x_only, xy, tx } layout;
    std::size_t n_axis;
    if (header.size() >= 2 && header[0] == "ix" && header[1] == "x") {
        layout = Layout::x_only;
        n_axis = 2;
    } else if (header.size() >= 4 && header[0] == "ix" && header[1] == "iy" &&
               header[2] == "x" && header[3] == "y") {
        layout = Layout::xy;
        n_axis = 4;
    } else if (header.size() >= 4 && header[0] == "it" && header[1] == "ix" &&
               header[2] == "t" && header[3] == "x") {
        layout = Layout::tx;
        n_axis = 4;
    } else {
        throw CliError(3, "line 1: unrecognized axis columns in header");
    }
    const std::vector<std::string> entries = split_ws(entry_header());
    if (header.size() != n_axis + entry_cols)
        throw CliError(3, "line 1: expected " + std::to_string(n_axis + entry_cols) +
                              " columns, got " + std::to_string(header.size()));
    for (std::size_t c = 0; c < entry_cols; ++c)
        if (header[n_axis + c] != entries[c])
            throw CliError(3, "line 1: column " + std::to_string(n_axis + c + 1) +
                                  " should be '" + entries[c] + "', got '" +
                                  header[n_axis + c] + "'");

    PotentialSamples out;
    int line_no = 1;
    while (std::getline(f, line)) {
        ++line_no;
        const std::vector<std::string> toks = split_ws(line);
        if (toks.empty()) continue;
        if (toks.size() != n_axis + entry_cols)
            throw CliError(3, "line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(n_axis + entry_cols) + " columns, got " +
                                  std::to_string(toks.size()));
        Point p{0.0, 0.0, 0.0};
        std::array<int, 2> idx{0, 0};
        switch (layout) {
            case Layout::x_only:
                idx[0] = static_cast<int>(parse_num(toks[0], line_no, 0));
                p.x = parse_num(toks[1], line_no, 1);
                break;
            case Layout::xy:
                idx[0] = static_cast<int>(parse_num(toks[0], line_no, 0));
                idx[1] = static_cast<int>(parse_num(toks[1], line_no, 1));
                p.x = parse_num(toks[2], line_no, 2);
                p.y = parse_num(toks[3], line_no, 3);
                break;
            case Layout::tx:
                idx[1] = static_cast<int>(parse_num(toks[0], line_no, 0));
                idx[0] = static_cast<int>(parse_num(toks[1], line_no, 1));
                p.t = parse_num(toks[2], line_no, 2);
                p.x = parse_num(toks[3], line_no, 3);
                break;
        }
        Matrix4cd m;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                const std::size_t c = n_axis + 2 * (4 * i + j);
                m(i, j) = complexd{parse_num(toks[c], line_no, c),
                                   parse_num(toks[c + 1], line_no, c + 1)};
            }
        out.points.push_back(p);
        out.mats.push_back(m);
        out.indices.push_back(idx);
    }
    if (out.points.empty()) throw CliError(3, path + ": no data rows");
    return out;
}

namespace {

template <class Grid, class AxisFn>
std::string value_table(const char* axis_header, const Grid& g, AxisFn&& axis,
                        const char* payload_header,
                        const std::function<std::string(int)>& payload) {
    std::string out = std::string(axis_header) + " " + payload_header + "\n";
    for (int k = 0; k < g.size(); ++k) {
        out += axis(k);
        out += ' ';
        out += payload(k);
        out += '\n';
    }
    return out;
}

std::string axis_1d(const Grid1D& g, int k) {
    return std::to_string(k) + " " + num17(g.point(k).x);
}
std::string axis_2d(const Grid2D& g, int k) {
    const Point p = g.point(k);
    return std::to_string(k % g.nx) + " " + std::to_string(k / g.nx) + " " +
           num17(p.x) + " " + num17(p.y);
}
std::string axis_tx(const GridTX& g, int k) {
    const Point p = g.point(k);
    return std::to_string(k / g.nx) + " " + std::to_string(k % g.nx) + " " +
           num17(p.t) + " " + num17(p.x);
}

std::string complex_payload(const VectorXcd& v, int k) {
    return num17(v[k].real()) + " " + num17(v[k].imag());
}

}  // namespace

std::string component_table(const VectorXcd& values, const Grid1D& g) {
    return value_table(
        "ix x", g, [&](int k) { return axis_1d(g, k); }, "Re Im",
        [&](int k) { return complex_payload(values, k); });
}
std::string component_table(const VectorXcd& values, const Grid2D& g) {
    return value_table(
        "ix iy x y", g, [&](int k) { return axis_2d(g, k); }, "Re Im",
        [&](int k) { return complex_payload(values, k); });
}
std::string component_table(const VectorXcd& values, const GridTX& g) {
    return value_table(
        "it ix t x", g, [&](int k) { return axis_tx(g, k); }, "Re Im",
        [&](int k) { return complex_payload(values, k); });
}
std::string density_table(const VectorXd& values, const Grid1D& g) {
    return value_table(
        "ix x", g, [&](int k) { return axis_1d(g, k); }, "density",
        [&](int k) { return num17(values[k]); });
}
std::string density_table(const VectorXd& values, const Grid2D& g) {
    return value_table(
        "ix iy x y", g, [&](int k) { return axis_2d(g, k); }, "density",
        [&](int k) { return num17(values[k]); });
}
std::string density_table(const VectorXd& values, const GridTX& g) {
    return value_table(
        "it ix t x", g, [&](int k) { return axis_tx(g, k); }, "density",
        [&](int k) { return num17(values[k]); });
}

}  // namespace diracred::cli

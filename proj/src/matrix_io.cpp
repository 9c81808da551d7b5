#include "triscale/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

#include "triscale/error.hpp"

namespace triscale {

namespace {

struct Line {
    std::size_t number;
    std::string text;
};

bool is_blank_or_comment(const std::string& s) {
    const auto pos = s.find_first_not_of(" \t\r");
    return pos == std::string::npos || s[pos] == '#';
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
    throw InputError(source + ":" + std::to_string(line) + ": " + what);
}

bool parse_double(std::string_view s, double& out) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

bool parse_entry(std::string_view token, Complex& out) {
    if (token.size() < 5 || token.front() != '(' || token.back() != ')') return false;
    token = token.substr(1, token.size() - 2);
    const auto comma = token.find(',');
    if (comma == std::string_view::npos) return false;
    double re = 0.0;
    double im = 0.0;
    if (!parse_double(token.substr(0, comma), re) || !parse_double(token.substr(comma + 1), im)) return false;
    out = Complex(re, im);
    return true;
}

std::vector<Line> content_lines(std::istream& in) {
    std::vector<Line> lines;
    std::string text;
    std::size_t number = 0;
    while (std::getline(in, text)) {
        ++number;
        if (!is_blank_or_comment(text)) lines.push_back({number, text});
    }
    return lines;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string format_complex(Complex z) {
    return "(" + format_double(z.real()) + "," + format_double(z.imag()) + ")";
}

namespace {

Matrix parse_lines(const std::vector<Line>& lines, const std::string& source) {
    if (lines.empty()) throw InputError(source + ": missing order line");

    std::size_t n = 0;
    {
        std::istringstream header(lines[0].text);
        std::string token;
        std::string extra;
        header >> token;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), n);
        if (ec != std::errc{} || ptr != token.data() + token.size() || n == 0 || (header >> extra))
            fail(source, lines[0].number, "expected a positive integer order, got '" + lines[0].text + "'");
    }
    if (lines.size() < n + 1)
        fail(source, lines.back().number, "expected " + std::to_string(n) + " rows, found " +
                                              std::to_string(lines.size() - 1));
    if (lines.size() > n + 1) fail(source, lines[n + 1].number, "unexpected content after the last row");

    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const Line& line = lines[i + 1];
        std::istringstream row(line.text);
        std::string token;
        std::size_t j = 0;
        while (row >> token) {
            if (j >= n) fail(source, line.number, "row " + std::to_string(i + 1) + " has more than " +
                                                      std::to_string(n) + " entries");
            Complex z;
            if (!parse_entry(token, z)) fail(source, line.number, "malformed entry '" + token + "'");
            m(i, j++) = z;
        }
        if (j != n) fail(source, line.number, "row " + std::to_string(i + 1) + " has " + std::to_string(j) +
                                                  " entries, expected " + std::to_string(n));
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
                fail(source, lines[i + 1].number, "non-finite entry at (" + std::to_string(i + 1) + "," +
                                                      std::to_string(j + 1) + ")");
        }
    }
    return m;
}

}  // namespace

Matrix parse_matrix_dense(std::istream& in, const std::string& source) {
    return parse_lines(content_lines(in), source);
}

UpperTriangular parse_matrix(std::istream& in, const std::string& source) {
    const std::vector<Line> lines = content_lines(in);
    Matrix m = parse_lines(lines, source);
    const std::size_t n = m.rows();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (m(i, j) != Complex{})
                fail(source, lines[i + 1].number, "not triangular: nonzero entry at (" + std::to_string(i + 1) +
                                                      "," + std::to_string(j + 1) + ")");
        }
    }
    return validate_triangular(std::move(m));
}

void format_matrix(std::ostream& out, const UpperTriangular& t) {
    const std::size_t n = t.order();
    out << n << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j > 0) out << ' ';
            out << format_complex(t(i, j));
        }
        out << '\n';
    }
}

UpperTriangular read_matrix(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    return parse_matrix(in, path.string());
}

void write_matrix(const UpperTriangular& t, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    format_matrix(out, t);
    if (!out) throw InputError("write failed: " + path.string());
}

}  // namespace triscale

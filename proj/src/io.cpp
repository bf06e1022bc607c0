#include "umc/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace umc::io {

namespace {

[[noreturn]] void fail(const std::string& path, long line, const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

}  // namespace

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

DenseMatrix load_matrix(const std::string& path) {
    std::ifstream in = open_in(path);
    std::string line;
    long lineno = 1;
    if (!std::getline(in, line)) fail(path, lineno, "missing header 'rows cols'");
    Index rows = 0, cols = 0;
    {
        std::istringstream hs(line);
        if (!(hs >> rows >> cols) || rows < 1 || cols < 1)
            fail(path, lineno, "bad header, expected 'rows cols'");
        std::string extra;
        if (hs >> extra) fail(path, lineno, "trailing tokens in header");
    }
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        ++lineno;
        if (!std::getline(in, line))
            fail(path, lineno, "unexpected end of file, expected " +
                                   std::to_string(rows) + " rows");
        std::istringstream ls(line);
        for (Index j = 0; j < cols; ++j) {
            double v;
            if (!(ls >> v))
                fail(path, lineno,
                     "row has fewer than " + std::to_string(cols) + " values");
            m(i, j) = v;
        }
        std::string extra;
        if (ls >> extra)
            fail(path, lineno, "row has more than " + std::to_string(cols) + " values");
    }
    try {
        return DenseMatrix(std::move(m));
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void save_matrix(const std::string& path, const DenseMatrix& m) {
    std::ofstream out = open_out(path);
    out << m.rows() << ' ' << m.cols() << '\n';
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << format_real(m(i, j));
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

SampleSet load_edges(const std::string& path) {
    std::ifstream in = open_in(path);
    std::string line;
    long lineno = 1;
    if (!std::getline(in, line)) fail(path, lineno, "missing header 'n1 n2 m'");
    Index n1 = 0, n2 = 0;
    long m = -1;
    {
        std::istringstream hs(line);
        if (!(hs >> n1 >> n2 >> m) || n1 < 1 || n2 < 1 || m < 0)
            fail(path, lineno, "bad header, expected 'n1 n2 m'");
    }
    if (m == 0) fail(path, lineno, "empty edge list");
    std::vector<SampleSet::Edge> edges;
    edges.reserve(static_cast<size_t>(m));
    for (long e = 0; e < m; ++e) {
        ++lineno;
        if (!std::getline(in, line))
            fail(path, lineno,
                 "unexpected end of file, expected " + std::to_string(m) + " edges");
        std::istringstream ls(line);
        Index i = 0, j = 0;
        if (!(ls >> i >> j)) fail(path, lineno, "expected 'i j'");
        if (i < 1 || i > n1 || j < 1 || j > n2)
            fail(path, lineno, "edge index out of range (1-based)");
        edges.emplace_back(i - 1, j - 1);
    }
    try {
        return SampleSet::from_edges(n1, n2, std::move(edges));
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void save_edges(const std::string& path, const SampleSet& omega) {
    std::ofstream out = open_out(path);
    out << omega.n1() << ' ' << omega.n2() << ' ' << omega.size() << '\n';
    for (const auto& [i, j] : omega.edges()) out << i + 1 << ' ' << j + 1 << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

void save_text(const std::string& path, const std::string& text) {
    std::ofstream out = open_out(path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace umc::io

#include "pabm/io.hpp"

#include "pabm/error.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

namespace pabm {

namespace {

bool skippable(const std::string& line) {
    const auto pos = line.find_first_not_of(" \t\r");
    return pos == std::string::npos || line[pos] == '#';
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

}  // namespace

AdjacencyMatrix read_edge_list(std::istream& in, int n) {
    if (n < 0) throw ParameterError("negative node count");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (skippable(line)) continue;
        std::istringstream ls(line);
        long long i = 0, j = 0;
        std::string extra;
        if (!(ls >> i >> j) || (ls >> extra)) throw ParseError("expected two integers \"i j\"", lineno);
        if (i < 1 || i > n || j < 1 || j > n) {
            throw RangeError("line " + std::to_string(lineno) + ": node index outside [1, " +
                             std::to_string(n) + "]");
        }
        if (i == j) continue;
        m(i - 1, j - 1) = 1.0;
        m(j - 1, i - 1) = 1.0;
    }
    return AdjacencyMatrix(std::move(m));
}

AdjacencyMatrix load_edge_list(const std::filesystem::path& path, int n) {
    auto in = open_in(path);
    return read_edge_list(in, n);
}

void write_edge_list(std::ostream& out, const AdjacencyMatrix& a) {
    for (auto [i, j] : a.edges()) out << i + 1 << ' ' << j + 1 << '\n';
}

void save_edge_list(const std::filesystem::path& path, const AdjacencyMatrix& a) {
    auto out = open_out(path);
    write_edge_list(out, a);
}

LabelVector read_labels(std::istream& in, int k) {
    std::vector<int> labels;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (skippable(line)) continue;
        std::istringstream ls(line);
        long long v = 0;
        std::string extra;
        if (!(ls >> v) || (ls >> extra)) throw ParseError("expected one integer label", lineno);
        if (v < 1 || (k > 0 && v > k)) throw ParseError("label out of range", lineno);
        labels.push_back(static_cast<int>(v));
    }
    const int kk = k > 0 ? k : (labels.empty() ? 1 : *std::max_element(labels.begin(), labels.end()));
    return LabelVector::from_one_based(labels, kk);
}

LabelVector load_labels(const std::filesystem::path& path, int k) {
    auto in = open_in(path);
    return read_labels(in, k);
}

void write_labels(std::ostream& out, const LabelVector& c) {
    for (int x : c.values()) out << x + 1 << '\n';
}

void save_labels(const std::filesystem::path& path, const LabelVector& c) {
    auto out = open_out(path);
    write_labels(out, c);
}

void save_index_map(const std::filesystem::path& path,
                    const std::vector<std::pair<int, int>>& index_map) {
    auto out = open_out(path);
    out << "old,new\n";
    for (auto [o, n] : index_map) out << o << ',' << n << '\n';
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m) {
    out << std::setprecision(17);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) out << ',';
            out << m(r, c);
        }
        out << '\n';
    }
}

void save_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m) {
    auto out = open_out(path);
    write_matrix_csv(out, m);
}

}  // namespace pabm

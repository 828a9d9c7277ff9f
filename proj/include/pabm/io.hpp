#pragma once

#include "pabm/graph.hpp"

#include <Eigen/Dense>

#include <filesystem>
#include <iosfwd>
#include <utility>
#include <vector>

namespace pabm {

// Edge lists: one "i j" pair per line, 1-based. Blank lines and lines starting
// with '#' are skipped.
AdjacencyMatrix read_edge_list(std::istream& in, int n);
AdjacencyMatrix load_edge_list(const std::filesystem::path& path, int n);
void write_edge_list(std::ostream& out, const AdjacencyMatrix& a);
void save_edge_list(const std::filesystem::path& path, const AdjacencyMatrix& a);

// Label files: one 1-based community index per line.
LabelVector read_labels(std::istream& in, int k = 0);
/// With k = 0 the community count is the largest label present.
LabelVector load_labels(const std::filesystem::path& path, int k = 0);
void write_labels(std::ostream& out, const LabelVector& c);
void save_labels(const std::filesystem::path& path, const LabelVector& c);

void save_index_map(const std::filesystem::path& path,
                    const std::vector<std::pair<int, int>>& index_map);

/// Plain CSV, no header, full round-trip precision.
void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m);
void save_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m);

}  // namespace pabm

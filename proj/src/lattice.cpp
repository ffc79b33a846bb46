#include "latadd/lattice.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace latadd {

LatticeField::LatticeField(Eigen::MatrixXd values) : values_(std::move(values)) {
  if (values_.rows() < 1 || values_.cols() < 1)
    throw std::invalid_argument("lattice field must have at least one row and one column");
  if (!values_.allFinite()) throw std::invalid_argument("lattice field contains non-finite values");
}

LatticeField LatticeField::window(Eigen::Index u0, Eigen::Index v0, Eigen::Index n_rows,
                                  Eigen::Index n_cols) const {
  if (u0 < 0 || v0 < 0 || n_rows < 1 || n_cols < 1 || u0 + n_rows > rows() || v0 + n_cols > cols())
    throw std::invalid_argument("window does not fit inside the field");
  return LatticeField(values_.block(u0, v0, n_rows, n_cols));
}

NeighborScheme::NeighborScheme(std::vector<Offset> offsets) : offsets_(std::move(offsets)) {
  if (offsets_.empty()) throw std::invalid_argument("neighbor scheme needs at least one offset");
  for (std::size_t i = 0; i < offsets_.size(); ++i) {
    if (offsets_[i].du == 0 && offsets_[i].dv == 0)
      throw std::invalid_argument("offset (0,0) is not a neighbour");
    for (std::size_t j = i + 1; j < offsets_.size(); ++j)
      if (offsets_[i] == offsets_[j]) throw std::invalid_argument("duplicate neighbour offset");
  }
}

NeighborScheme NeighborScheme::parse(const std::string& text) {
  std::vector<Offset> offsets;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ';')) {
    if (part.empty()) continue;
    const auto comma = part.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("offset must be 'du,dv': " + part);
    std::size_t used1 = 0, used2 = 0;
    const int du = std::stoi(part.substr(0, comma), &used1);
    const int dv = std::stoi(part.substr(comma + 1), &used2);
    if (used1 != comma || used2 != part.size() - comma - 1)
      throw std::invalid_argument("malformed offset: " + part);
    offsets.push_back({du, dv});
  }
  return NeighborScheme(offsets);
}

std::string NeighborScheme::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < offsets_.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(offsets_[i].du) + ',' + std::to_string(offsets_[i].dv);
  }
  return out;
}

NeighborScheme NeighborScheme::four_neighbor() {
  return NeighborScheme({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
}

RegressionSample extract_samples(const LatticeField& field, const NeighborScheme& scheme) {
  const auto& offsets = scheme.offsets();
  const Eigen::Index n1 = field.rows(), n2 = field.cols();
  const int d = scheme.dim();

  std::vector<std::pair<int, int>> sites;
  for (Eigen::Index u = 0; u < n1; ++u) {
    for (Eigen::Index v = 0; v < n2; ++v) {
      bool complete = true;
      for (const auto& o : offsets) {
        const Eigen::Index nu = u - o.du, nv = v - o.dv;
        if (nu < 0 || nu >= n1 || nv < 0 || nv >= n2) {
          complete = false;
          break;
        }
      }
      if (complete) sites.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
  }
  if (sites.empty()) throw std::runtime_error("no interior sites");

  RegressionSample sample;
  sample.sites = std::move(sites);
  const auto n = static_cast<Eigen::Index>(sample.sites.size());
  sample.responses.resize(n);
  sample.designs.resize(n, d);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto [u, v] = sample.sites[static_cast<std::size_t>(k)];
    sample.responses(k) = field(u, v);
    for (int j = 0; j < d; ++j)
      sample.designs(k, j) = field(u - offsets[static_cast<std::size_t>(j)].du,
                                   v - offsets[static_cast<std::size_t>(j)].dv);
  }
  return sample;
}

CodingPartition checkerboard_coding(const LatticeField& field) {
  if (field.rows() < 3 || field.cols() < 3) throw std::runtime_error("no interior sites");
  CodingPartition part;
  for (Eigen::Index u = 1; u + 1 < field.rows(); ++u) {
    for (Eigen::Index v = 1; v + 1 < field.cols(); ++v) {
      auto& code = ((u + v) % 2 == 0) ? part.code_a : part.code_b;
      code.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
  }
  return part;
}

}  // namespace latadd

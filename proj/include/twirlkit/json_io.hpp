#ifndef TWIRLKIT_JSON_IO_HPP
#define TWIRLKIT_JSON_IO_HPP

#include "twirlkit/block_spec.hpp"
#include "twirlkit/channel.hpp"
#include "twirlkit/isotypic.hpp"
#include "twirlkit/mud.hpp"
#include "twirlkit/twirls.hpp"

#include <json.hpp>

#include <stdexcept>
#include <vector>

// Shared JSON schema: complex scalar = [re, im]; matrix = array of rows;
// Channel = {"dim_in", "dim_out", "kraus": [matrix, ...]};
// MixedUnitaryDecomposition = {"dim", "probs": [...], "unitaries": [...]};
// FiniteGroupRep = {"dim", "elements": [matrix, ...]}.
namespace twirlkit::io {

using json = nlohmann::ordered_json;

inline json to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("complex scalar must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline json to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("matrix must be a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j[i].size()) != cols)
      throw std::invalid_argument("matrix rows have unequal lengths");
    for (Eigen::Index k = 0; k < cols; ++k)
      m(i, k) = complex_from_json(j[i][k]);
  }
  return m;
}

inline json to_json(const Channel& c) {
  json kraus = json::array();
  for (const Matrix& a : c.kraus()) kraus.push_back(to_json(a));
  return json{{"dim_in", c.dim_in()},
              {"dim_out", c.dim_out()},
              {"kraus", std::move(kraus)}};
}

inline Channel channel_from_json(const json& j) {
  std::vector<Matrix> kraus;
  for (const json& a : j.at("kraus")) kraus.push_back(matrix_from_json(a));
  return Channel(j.at("dim_in").get<int>(), j.at("dim_out").get<int>(),
                 std::move(kraus));
}

inline json to_json(const MixedUnitaryDecomposition& d) {
  json unitaries = json::array();
  for (const Matrix& u : d.unitaries) unitaries.push_back(to_json(u));
  return json{{"dim", d.dim}, {"probs", d.probs}, {"unitaries", std::move(unitaries)}};
}

inline MixedUnitaryDecomposition decomposition_from_json(const json& j) {
  MixedUnitaryDecomposition d;
  d.dim = j.at("dim").get<int>();
  d.probs = j.at("probs").get<std::vector<double>>();
  for (const json& u : j.at("unitaries")) d.unitaries.push_back(matrix_from_json(u));
  d.validate();
  return d;
}

inline json to_json(const BlockSpec& spec) {
  json blocks = json::array();
  for (const Block& b : spec.blocks)
    blocks.push_back(json::array({b.multiplicity, b.dimension}));
  return blocks;
}

inline BlockSpec block_spec_from_json(const json& j) {
  std::vector<Block> blocks;
  for (const json& b : j)
    blocks.push_back({b.at(0).get<int>(), b.at(1).get<int>()});
  return BlockSpec(std::move(blocks));
}

inline json to_json(const BlockStructure& bs) {
  return json{{"spec", to_json(bs.spec)},
              {"basis_change", to_json(bs.basis_change)},
              {"residual", bs.residual}};
}

inline json to_json(const DecompositionReport& r) {
  return json{{"pass", r.pass},
              {"max_channel_error", r.max_channel_error},
              {"max_unitarity_error", r.max_unitarity_error},
              {"prob_sum_error", r.prob_sum_error}};
}

inline FiniteGroupRep group_rep_from_json(const json& j) {
  std::vector<Matrix> elements;
  for (const json& g : j.at("elements")) elements.push_back(matrix_from_json(g));
  return FiniteGroupRep(j.at("dim").get<int>(), std::move(elements));
}

inline json to_json(const FiniteGroupRep& rep) {
  json elements = json::array();
  for (const Matrix& g : rep.elements()) elements.push_back(to_json(g));
  return json{{"dim", rep.dim()}, {"elements", std::move(elements)}};
}

}  // namespace twirlkit::io

#endif  // TWIRLKIT_JSON_IO_HPP

#ifndef FUZZY_POTTS_IO_HPP
#define FUZZY_POTTS_IO_HPP

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fuzzy_potts/model.hpp"
#include "fuzzy_potts/tree.hpp"

namespace fuzzy_potts {

using ordered_json = nlohmann::ordered_json;

// {"q": ..., "beta": ..., "partition": [...]}
inline ModelParams params_from_json(const nlohmann::json& j) {
  if (!j.contains("q") || !j.contains("beta") || !j.contains("partition"))
    throw std::invalid_argument("params json: needs keys q, beta, partition");
  ModelParams p;
  p.q = j.at("q").get<int>();
  p.beta = j.at("beta").get<double>();
  p.partition = j.at("partition").get<std::vector<int>>();
  return validate(p);
}

inline ordered_json params_to_json(const ModelParams& p) {
  ordered_json j;
  j["q"] = p.q;
  j["beta"] = p.beta;
  j["partition"] = p.partition;
  return j;
}

inline ModelParams load_params_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  nlohmann::json j;
  in >> j;
  return params_from_json(j);
}

// {"nodes": N, "parent": [...]} with null (or -1) marking the root.
inline RootedTree tree_from_json(const nlohmann::json& j) {
  if (!j.contains("nodes") || !j.contains("parent"))
    throw std::invalid_argument("tree json: needs keys nodes, parent");
  const auto n = j.at("nodes").get<std::int64_t>();
  const auto& arr = j.at("parent");
  if (!arr.is_array() || static_cast<std::int64_t>(arr.size()) != n)
    throw std::invalid_argument("tree json: parent array length != nodes");
  std::vector<int> parent;
  parent.reserve(arr.size());
  for (const auto& entry : arr)
    parent.push_back(entry.is_null() ? -1 : entry.get<int>());
  return make_tree(parent);
}

inline ordered_json tree_to_json(const RootedTree& t) {
  ordered_json j;
  j["nodes"] = t.size();
  ordered_json arr = ordered_json::array();
  for (int p : t.parent) {
    if (p < 0)
      arr.push_back(nullptr);
    else
      arr.push_back(p);
  }
  j["parent"] = arr;
  return j;
}

inline RootedTree load_tree_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open tree file: " + path);
  nlohmann::json j;
  in >> j;
  return tree_from_json(j);
}

}  // namespace fuzzy_potts

#endif

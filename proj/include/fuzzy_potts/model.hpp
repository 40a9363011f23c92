#ifndef FUZZY_POTTS_MODEL_HPP
#define FUZZY_POTTS_MODEL_HPP

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace fuzzy_potts {

inline constexpr const char* kVersion = "0.1.0";

// Potts states 1..q are merged into classes 1..s of sizes (r_1, ..., r_s).
// All interfaces are 1-based to match the usual statistical-mechanics
// labelling; containers are indexed 0-based internally.
struct ModelParams {
  int q = 0;
  double beta = 0.0;
  std::vector<int> partition;

  int s() const { return static_cast<int>(partition.size()); }
};

// Returns the params unchanged iff they are admissible, otherwise throws
// std::invalid_argument naming the violated clause.
inline ModelParams validate(ModelParams p) {
  if (p.q < 3)
    throw std::invalid_argument("params: q=" + std::to_string(p.q) +
                                " violates q >= 3");
  if (!(p.beta >= 0.0))
    throw std::invalid_argument("params: beta=" + std::to_string(p.beta) +
                                " violates beta >= 0");
  const int s = p.s();
  if (!(1 < s && s < p.q))
    throw std::invalid_argument("params: s=" + std::to_string(s) +
                                " violates 1 < s < q with q=" +
                                std::to_string(p.q));
  int sum = 0;
  for (int i = 0; i < s; ++i) {
    if (p.partition[i] < 1)
      throw std::invalid_argument("params: r_" + std::to_string(i + 1) + "=" +
                                  std::to_string(p.partition[i]) +
                                  " violates r_i >= 1");
    sum += p.partition[i];
  }
  if (sum != p.q)
    throw std::invalid_argument("params: partition sum " + std::to_string(sum) +
                                " violates sum r_i = q = " +
                                std::to_string(p.q));
  return p;
}

inline ModelParams make_params(int q, double beta, std::vector<int> partition) {
  return validate(ModelParams{q, beta, std::move(partition)});
}

// Consecutive half-open blocks of {1..q}; block l covers
// (cum[l-1], cum[l]] in 1-based state labels.
struct FuzzyMap {
  std::vector<int> cum;  // cum[0] = 0, cum[s] = q

  int num_classes() const { return static_cast<int>(cum.size()) - 1; }
  int num_states() const { return cum.back(); }
  int block_size(int cls) const { return cum[cls] - cum[cls - 1]; }
  int block_first(int cls) const { return cum[cls - 1] + 1; }
  int block_last(int cls) const { return cum[cls]; }
};

inline FuzzyMap fuzzy_map(const std::vector<int>& partition) {
  FuzzyMap m;
  m.cum.resize(partition.size() + 1, 0);
  for (std::size_t i = 0; i < partition.size(); ++i) {
    if (partition[i] < 1)
      throw std::invalid_argument("fuzzy_map: block sizes must be >= 1");
    m.cum[i + 1] = m.cum[i] + partition[i];
  }
  return m;
}

inline FuzzyMap fuzzy_map(const ModelParams& p) { return fuzzy_map(p.partition); }

// Class of a Potts state, 1-based both ways.
inline int fuzzy_project(int potts_state, const FuzzyMap& map) {
  if (potts_state < 1 || potts_state > map.num_states())
    throw std::out_of_range("fuzzy_project: state " +
                            std::to_string(potts_state) + " outside 1.." +
                            std::to_string(map.num_states()));
  int cls = 1;
  while (map.cum[cls] < potts_state) ++cls;
  return cls;
}

}  // namespace fuzzy_potts

#endif

#pragma once

// Path, truncated path and incidence semigroups of finite quivers, and
// their generic or natural effective representations.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "effdim/rep.hpp"
#include "effdim/semigroup.hpp"

namespace effdim {

struct QuiverEdge {
  std::uint32_t src = 0, dst = 0;
  std::string label;
};

struct Quiver {
  std::vector<std::string> vertices;
  std::vector<QuiverEdge> edges;

  std::size_t num_vertices() const { return vertices.size(); }
  bool acyclic() const;
  // Component id per vertex (Tarjan order).
  std::vector<std::uint32_t> strongly_connected_components() const;
  // Every vertex lies on an oriented cycle or loop.
  bool every_vertex_on_cycle() const;

  // Either {"vertices": [...], "edges": [{"src","dst","label"}]} or the
  // poset shorthand {"relation": [[i, j], ...]} (optionally with "vertices"),
  // which is transitively closed and turned into its Hasse diagram.
  static Quiver from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  static Quiver chain(std::size_t n);  // A_n: 0 -> 1 -> ... -> n-1
  static Quiver loop();                // one vertex, one loop
};

enum class PathKind { Path, Truncated, Incidence };

struct QuiverPath {
  std::uint32_t source = 0, target = 0;
  std::vector<std::uint32_t> edges;  // e_1 ... e_m with t(e_i) = s(e_{i+1})
};

struct PathSemigroup {
  PathKind kind = PathKind::Path;
  int truncation = 0;           // N for the truncated kind
  CayleyTable table;
  std::vector<QuiverPath> paths;  // one per nonzero element; incidence keeps a representative
  Elem zero = 0;                // last element
};

inline constexpr std::size_t kPathElementBudget = 4096;

// Empty paths first (vertex order), then by length and edge sequence, zero last.
PathSemigroup build_path_semigroup(PathKind kind, const Quiver& q, int truncation = 0);

struct QuiverOptions {
  std::uint64_t seed = 1;
  int retry_cap = 32;
};

template <class Field>
struct QuiverRepResult {
  MatrixRep<Field> rep;
  std::vector<Index> dimension_vector;
  std::vector<Matrix<typename Field::scalar_type>> edge_maps;  // n_{s(e)} x n_{t(e)}
  int retries_used = 0;
  bool exact = true;  // false: truncated quiver with a vertex on no cycle
  std::uint64_t seed = 0;
};

// Vertex spaces in vertex order; a path acts by its composed edge maps in
// block (s(p), t(p)) and by zero elsewhere.
template <class Field>
MatrixRep<Field> quiver_module(std::shared_ptr<const CayleyTable> s, const PathSemigroup& ps, const Field& field,
                               const std::vector<Index>& dims,
                               const std::vector<Matrix<typename Field::scalar_type>>& edge_maps);

template <class Field>
QuiverRepResult<Field> generic_quiver_rep(const PathSemigroup& ps, const Quiver& q, const Field& field,
                                          const QuiverOptions& opt = {});

// Lower bound certified by the semigroup's structure: n for path and
// incidence (the empty paths), N n for truncated when every vertex is on
// a cycle, otherwise n.
int quiver_lower_bound(const PathSemigroup& ps, const Quiver& q);

#define EFFDIM_QUIVER_EXTERN(F)                                                                                \
  extern template MatrixRep<F> quiver_module<F>(std::shared_ptr<const CayleyTable>, const PathSemigroup&,     \
                                                const F&, const std::vector<Index>&,                          \
                                                const std::vector<Matrix<F::scalar_type>>&);                   \
  extern template QuiverRepResult<F> generic_quiver_rep<F>(const PathSemigroup&, const Quiver&, const F&,     \
                                                           const QuiverOptions&);
EFFDIM_QUIVER_EXTERN(RationalField)
EFFDIM_QUIVER_EXTERN(FiniteField)
#undef EFFDIM_QUIVER_EXTERN

}  // namespace effdim

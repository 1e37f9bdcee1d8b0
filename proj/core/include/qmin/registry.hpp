#pragma once

#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "qmin/strongprops.hpp"

namespace qmin {

/// Witness store keyed by canonical form. Writers are serialized, readers run concurrently.
class Registry {
 public:
  Registry() = default;
  Registry(const Registry& other);
  Registry& operator=(const Registry& other);

  /// Stores a record that already went through make_witness; returns its id.
  const std::string& add(WitnessRecord rec);
  /// Records whose graph is isomorphic to g.
  std::vector<WitnessRecord> lookup(const Graph& g) const;
  std::optional<WitnessRecord> find(const std::string& id) const;
  std::vector<WitnessRecord> all() const;
  std::size_t size() const;

 private:
  mutable std::shared_mutex mutex_;
  std::vector<WitnessRecord> records_;
  std::multimap<std::string, std::size_t> by_key_;
  std::map<std::string, std::size_t> by_id_;
};

/// Re-verifies the claimed flags (make_witness) and stores the record.
/// Throws verification-failed if a claim does not hold.
std::string register_witness(Registry& registry, std::string id, const Graph& g, const SymMatrix& a,
                             WitnessFlags claimed, std::string source);

struct LiftedBound {
  int value = 0;
  std::string witness_id;
  std::vector<int> embedding;  // witness vertex i sits on vertex embedding[i] of g
};

/// Minimum q over registered SMP witnesses whose graph is a spanning subgraph of g (|V(g)| <= 10).
std::optional<LiftedBound> lift_bound(const Graph& g, const Registry& registry);

}  // namespace qmin

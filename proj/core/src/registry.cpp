#include "qmin/registry.hpp"

#include <mutex>

#include "qmin/canonical.hpp"
#include "qmin/error.hpp"

namespace qmin {

Registry::Registry(const Registry& other) {
  std::shared_lock lock(other.mutex_);
  records_ = other.records_;
  by_key_ = other.by_key_;
  by_id_ = other.by_id_;
}

Registry& Registry::operator=(const Registry& other) {
  if (this == &other) return *this;
  std::unique_lock mine(mutex_, std::defer_lock);
  std::shared_lock theirs(other.mutex_, std::defer_lock);
  std::lock(mine, theirs);
  records_ = other.records_;
  by_key_ = other.by_key_;
  by_id_ = other.by_id_;
  return *this;
}

const std::string& Registry::add(WitnessRecord rec) {
  const std::string key = canonical_key(rec.graph);
  std::unique_lock lock(mutex_);
  if (rec.id.empty() || by_id_.count(rec.id)) rec.id = (rec.id.empty() ? "w" : rec.id + "#") + std::to_string(records_.size());
  const std::size_t slot = records_.size();
  by_key_.emplace(key, slot);
  by_id_.emplace(rec.id, slot);
  records_.push_back(std::move(rec));
  return records_.back().id;
}

std::vector<WitnessRecord> Registry::lookup(const Graph& g) const {
  const std::string key = canonical_key(g);
  std::shared_lock lock(mutex_);
  std::vector<WitnessRecord> out;
  auto [lo, hi] = by_key_.equal_range(key);
  for (auto it = lo; it != hi; ++it) out.push_back(records_[it->second]);
  return out;
}

std::optional<WitnessRecord> Registry::find(const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = by_id_.find(id);
  if (it == by_id_.end()) return std::nullopt;
  return records_[it->second];
}

std::vector<WitnessRecord> Registry::all() const {
  std::shared_lock lock(mutex_);
  return records_;
}

std::size_t Registry::size() const {
  std::shared_lock lock(mutex_);
  return records_.size();
}

std::string register_witness(Registry& registry, std::string id, const Graph& g, const SymMatrix& a,
                             WitnessFlags claimed, std::string source) {
  return registry.add(make_witness(std::move(id), g, a, claimed, std::move(source)));
}

std::optional<LiftedBound> lift_bound(const Graph& g, const Registry& registry) {
  if (g.order() > 10) return std::nullopt;
  std::optional<LiftedBound> best;
  for (const auto& rec : registry.all()) {
    if (!rec.verified.smp || rec.graph.order() != g.order() || rec.graph.size() > g.size()) continue;
    if (best && rec.summary.q >= best->value) continue;
    if (auto pi = is_spanning_subgraph_of(rec.graph, g)) best = LiftedBound{rec.summary.q, rec.id, *pi};
  }
  return best;
}

}  // namespace qmin

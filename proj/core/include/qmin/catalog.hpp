#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmin/graph.hpp"
#include "qmin/registry.hpp"
#include "qmin/search.hpp"
#include "qmin/spectra.hpp"
#include "qmin/strongprops.hpp"

namespace qmin {

/// An explicit matrix with its stated spectrum and the properties claimed for it.
struct CatalogMatrix {
  std::string key;        // "M_96", "M_banner", ...
  std::string graph_key;  // graph it defines, e.g. "G96"
  SymMatrix matrix;
  std::vector<double> spectrum;  // ascending, with repeats
  WitnessFlags claimed;
  std::string source;
};

/// Witness obtained by adding one vertex to a catalog matrix (vertex sets 0-based here).
struct AugmentedSpec {
  std::string key;       // graph key of the result
  std::string base;      // catalog matrix key, or "C_hat_5"
  int cluster = 0;
  std::vector<int> alpha;
  std::vector<int> multiplicities;
  std::string source;
};

/// A table key whose structure is pinned down, and how.
struct IdentifiedGraph {
  std::string key;
  Graph graph;
  std::string how;  // matrix, figure, text, family, product, inferred
};

struct TableEntry {
  std::string key;
  int order = 0;
  int q = 0;
  std::string reason;
};

struct IndependentSetCheck {
  std::string graph_key;
  std::vector<int> set;  // 0-based
};

struct CatalogData {
  std::vector<CatalogMatrix> matrices;
  std::vector<AugmentedSpec> augmented;
  std::vector<IdentifiedGraph> graphs;
  std::vector<TableEntry> table2;
  std::vector<TableEntry> table4;
  std::vector<TableEntry> asserted;  // values taken as given, not re-derived
  std::vector<IndependentSetCheck> independent_sets;
};

/// Parses catalog JSON (1-based vertices). Throws catalog-corrupt on malformed data.
CatalogData parse_catalog(std::string_view json);
/// The embedded catalog, parsed once.
const CatalogData& catalog_data();

/// Graph order implied by a small-graph table key (G1..G208).
int table_key_order(const std::string& key);

struct CatalogOptions {
  SearchBudget budget;
  bool family_witnesses = true;  // J_n, K_{m,n}, K_n - e, Q_d, small clique families, P3 strong P3
};

/// Registry seeded with every catalog witness, all re-verified. Throws catalog-corrupt
/// if a matrix misses its stated spectrum or a claimed property, or an augmentation fails.
Registry load_catalog(const CatalogOptions& options = {});
/// load_catalog() with default options, built once.
const Registry& catalog_registry();

struct PaperValue {
  int q = 0;
  std::string citation;
};

/// Transcribed table value for "G37", "G187", ... Throws unknown-key.
PaperValue paper_value(const std::string& key);
std::optional<IdentifiedGraph> identified_graph(const std::string& key);
/// Catalog matrix by key; "C_hat_n" gives the flipped cycle. Throws unknown-key.
SymMatrix catalog_matrix(const std::string& key);
const CatalogMatrix& catalog_entry(const std::string& key);

struct ConformanceCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ConformanceReport {
  std::vector<ConformanceCheck> checks;
  bool all_passed() const;
};

/// Re-runs the load-time checks against a loaded registry and reports each one.
ConformanceReport verify_catalog(const Registry& registry, double spectrum_tol = 1e-8);

/// Largest deviation between the non-augmented clusters of `augmented` and those of `base`:
/// the augmented cluster must have gained exactly one, every other value must persist.
double cluster_preservation_error(const SymMatrix& base, const SymMatrix& augmented, int cluster);

}  // namespace qmin

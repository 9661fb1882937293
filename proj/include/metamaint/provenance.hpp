// Copyright 2026 The metamaint Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Clone-and-own provenance derived from release contracts, and the
// propagation queries answered over it. The graph is rebuilt from state on
// demand.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "metamaint/state.hpp"
#include "metamaint/version.hpp"

namespace metamaint {

struct ProvenanceNode {
  std::string component_name;
  AccountId owner;
  Version latest;
  std::uint64_t created_height = 0;
  std::uint64_t created_index = 0;

  friend bool operator==(const ProvenanceNode&, const ProvenanceNode&) = default;
};

struct ProvenanceEdge {
  Address downstream;
  Address upstream;
  Version pinned;

  friend bool operator==(const ProvenanceEdge&, const ProvenanceEdge&) = default;
};

class ProvenanceGraph {
 public:
  const std::map<Address, ProvenanceNode>& nodes() const noexcept { return nodes_; }
  // Keyed by downstream: every release has at most one upstream.
  const std::map<Address, ProvenanceEdge>& edges() const noexcept { return edges_; }
  // Direct clones of `upstream`, sorted by address.
  std::vector<const ProvenanceEdge*> children(const Address& upstream) const;

  bool contains(const Address& release) const { return nodes_.count(release) > 0; }

 private:
  friend ProvenanceGraph build_graph(const WorldState& world);

  std::map<Address, ProvenanceNode> nodes_;
  std::map<Address, ProvenanceEdge> edges_;
  std::multimap<Address, Address> children_;
};

ProvenanceGraph build_graph(const WorldState& world);

// Transitive clones of `release`. With `version`, only chains whose first
// hop pins exactly that version. Throws Error(UnknownRelease).
std::set<Address> downstream_of(const ProvenanceGraph& graph, const Address& release,
                                const std::optional<Version>& version = std::nullopt);

struct OutdatedClone {
  Address clone;
  Version pinned;
  Version upstream_latest;

  friend bool operator==(const OutdatedClone&, const OutdatedClone&) = default;
};

// Every edge whose pinned version is older than the upstream's latest,
// sorted by clone address.
std::vector<OutdatedClone> outdated_clones(const ProvenanceGraph& graph, const WorldState& world);

// The issue's target (when one of its versions is in the affected range)
// plus every transitive clone whose first hop pins an affected version.
// Throws Error(UnknownIssue).
std::set<Address> impact_set(const ProvenanceGraph& graph, const WorldState& world,
                             const Address& issue);

// Node lines `address|component_name|latest_version`, then edge lines
// `downstream|upstream|pinned_version`, each group sorted.
std::string graph_dump(const ProvenanceGraph& graph);

}  // namespace metamaint

// Copyright 2026 The metamaint Authors
// SPDX-License-Identifier: Apache-2.0

#include "metamaint/provenance.hpp"

#include <algorithm>

namespace metamaint {

namespace {

void collect_descendants(const ProvenanceGraph& graph, const Address& from, std::set<Address>& out) {
  std::vector<Address> stack{from};
  while (!stack.empty()) {
    auto cur = stack.back();
    stack.pop_back();
    for (const auto* e : graph.children(cur)) {
      if (out.insert(e->downstream).second) stack.push_back(e->downstream);
    }
  }
}

}  // namespace

std::vector<const ProvenanceEdge*> ProvenanceGraph::children(const Address& upstream) const {
  std::vector<const ProvenanceEdge*> out;
  auto [lo, hi] = children_.equal_range(upstream);
  for (auto it = lo; it != hi; ++it) out.push_back(&edges_.at(it->second));
  std::sort(out.begin(), out.end(),
            [](const auto* a, const auto* b) { return a->downstream < b->downstream; });
  return out;
}

ProvenanceGraph build_graph(const WorldState& world) {
  ProvenanceGraph g;
  for (const auto& [addr, rec] : world.contracts) {
    const auto* release = std::get_if<ReleaseContractState>(&rec.body);
    if (!release) continue;
    g.nodes_.emplace(addr, ProvenanceNode{release->component_name, release->owner, latest_version(*release),
                                          rec.created_height, rec.created_index});
    if (release->upstream) {
      g.edges_.emplace(addr, ProvenanceEdge{addr, release->upstream->release_addr,
                                            release->upstream->pinned_version});
      g.children_.emplace(release->upstream->release_addr, addr);
    }
  }
  return g;
}

std::set<Address> downstream_of(const ProvenanceGraph& graph, const Address& release,
                                const std::optional<Version>& version) {
  if (!graph.contains(release)) throw Error(ErrorCode::UnknownRelease, "no release " + release.hex());
  std::set<Address> out;
  for (const auto* e : graph.children(release)) {
    if (version && e->pinned != *version) continue;
    out.insert(e->downstream);
    collect_descendants(graph, e->downstream, out);
  }
  return out;
}

std::vector<OutdatedClone> outdated_clones(const ProvenanceGraph& graph, const WorldState& world) {
  std::vector<OutdatedClone> out;
  for (const auto& [down, edge] : graph.edges()) {
    const auto* upstream = world.find_as<ReleaseContractState>(edge.upstream);
    if (!upstream) continue;
    const auto& latest = latest_version(*upstream);
    if (compare_versions(edge.pinned, latest) == Ordering::Less) {
      out.push_back(OutdatedClone{down, edge.pinned, latest});
    }
  }
  return out;
}

std::set<Address> impact_set(const ProvenanceGraph& graph, const WorldState& world,
                             const Address& issue_addr) {
  const auto* issue = world.find_as<IssueContractState>(issue_addr);
  if (!issue) throw Error(ErrorCode::UnknownIssue, "no issue " + issue_addr.hex());

  auto affected = [&](const Version& v) {
    return compare_versions(issue->affected_lo, v) != Ordering::Greater &&
           compare_versions(v, issue->affected_hi) != Ordering::Greater;
  };

  std::set<Address> out;
  const auto* target = world.find_as<ReleaseContractState>(issue->target_release);
  if (!target) return out;
  if (std::any_of(target->versions.begin(), target->versions.end(),
                  [&](const VersionEntry& e) { return affected(e.version); })) {
    out.insert(issue->target_release);
  }
  for (const auto* e : graph.children(issue->target_release)) {
    if (!affected(e->pinned)) continue;
    out.insert(e->downstream);
    collect_descendants(graph, e->downstream, out);
  }
  return out;
}

std::string graph_dump(const ProvenanceGraph& graph) {
  std::vector<std::string> nodes, edges;
  for (const auto& [addr, n] : graph.nodes()) {
    nodes.push_back(addr.hex() + "|" + n.component_name + "|" + n.latest.to_string());
  }
  for (const auto& [down, e] : graph.edges()) {
    edges.push_back(down.hex() + "|" + e.upstream.hex() + "|" + e.pinned.to_string());
  }
  std::sort(nodes.begin(), nodes.end());
  std::sort(edges.begin(), edges.end());
  std::string out;
  for (const auto& l : nodes) out += l + "\n";
  for (const auto& l : edges) out += l + "\n";
  return out;
}

}  // namespace metamaint

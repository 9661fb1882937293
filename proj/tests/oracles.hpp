// Copyright 2026 The metamaint Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Brute-force reference answers computed by scanning contract states
// directly. Deliberately naive: no graph, no shared helpers with the code
// under test beyond the state types themselves.

#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "metamaint/issues.hpp"
#include "metamaint/state.hpp"

namespace metamaint::oracle {

// Versions as zero-padded 4-tuples.
std::vector<std::uint64_t> padded(const Version& v);
bool less(const Version& a, const Version& b);
bool less_equal(const Version& a, const Version& b);

std::string latest(const ReleaseContractState& r);

using NodeRow = std::tuple<std::string, std::string, std::string>;  // address, component, latest
using EdgeRow = std::tuple<std::string, std::string, std::string>;  // downstream, upstream, pinned

std::set<NodeRow> graph_nodes(const WorldState& world);
std::set<EdgeRow> graph_edges(const WorldState& world);
// clone, pinned, upstream latest
std::set<EdgeRow> outdated(const WorldState& world);
std::vector<Address> issues(const WorldState& world, const IssueFilter& filter);
std::set<Address> downstream(const WorldState& world, const Address& release);
std::set<Address> impact(const WorldState& world, const Address& issue);

}  // namespace metamaint::oracle

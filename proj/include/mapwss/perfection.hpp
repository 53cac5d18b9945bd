#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mapwss/graph.hpp"
#include "mapwss/model.hpp"
#include "mapwss/nmrf.hpp"

namespace mapwss {

/// Default vertex cap for exhaustive hole searches.  Searches work on 64-bit
/// vertex masks, so caps above 64 behave as 64.
inline constexpr int kDefaultHoleCap = 24;

/// An induced chordless odd cycle of length >= 5, as a vertex sequence.  The
/// first vertex is the smallest; among those the lexicographically smallest
/// sequence is returned.  Throws TooLarge when |V| exceeds the cap.
std::optional<std::vector<int>> find_odd_hole(const Graph& graph, int max_vertices = kDefaultHoleCap);

enum class WitnessKind { none, odd_hole, odd_antihole };

std::string_view to_string(WitnessKind kind);

struct PerfectionVerdict {
  bool perfect = true;
  WitnessKind kind = WitnessKind::none;
  std::vector<int> witness;
};

/// Strong perfect graph test: no odd hole in G or in its complement.
PerfectionVerdict is_perfect_small(const Graph& graph, int max_vertices = kDefaultHoleCap);

/// Perfection of a pruned NMRF of a binary pairwise model with one enode per
/// edge.  Only odd holes are searched: such graphs carry no odd antihole of
/// size >= 7 and a 5-antihole is a 5-hole.  Throws NotSingleEnodeForm.
PerfectionVerdict binary_pairwise_perfection(const Nmrf& pruned, int max_vertices = kDefaultHoleCap);

struct HoleNode {
  int edge = -1;  // cycle edge index for enodes, -1 for connecting snodes
  Assignment assignment;
};

/// Chordless cycle of NMRF nodes generated by an MRF cycle: the enode of each
/// cycle edge, with a connecting snode wherever two consecutive enodes give
/// their shared variable the same label.  forms[i] is the enode form of the
/// edge (v_i, v_{i+1}).  Its length has the parity of the repulsive count.
std::vector<HoleNode> cycle_to_induced_hole(const SignedCycle& cycle, std::span<const EnodeForm> forms);

}  // namespace mapwss

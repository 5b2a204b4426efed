#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace trustnet {

/// Undirected simple graph over vertices 0..N-1. Each vertex also carries an
/// external label (the id used in input files and reports).
class SocialNetwork {
 public:
  SocialNetwork() = default;

  /// Builds a graph with `vertex_count` vertices labelled 1..N.
  /// Self-loops are rejected; repeated edges are collapsed.
  SocialNetwork(std::size_t vertex_count, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  std::size_t size() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  /// Sorted 1-hop neighbors.
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adjacency_.at(v); }
  std::size_t degree(std::size_t v) const { return adjacency_.at(v).size(); }
  bool has_edge(std::size_t u, std::size_t v) const;

  /// Vertices at distance exactly two, sorted.
  std::vector<std::size_t> two_hop(std::size_t v) const;

  std::size_t max_degree() const;

  const std::vector<long long>& labels() const { return labels_; }
  long long label(std::size_t v) const { return labels_.at(v); }
  void set_labels(std::vector<long long> labels);
  /// Index of the vertex with `label`, or size() if none.
  std::size_t index_of(long long label) const;

  /// Sorted (u, v) pairs with u < v.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

 private:
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<long long> labels_;
  std::size_t edge_count_ = 0;
};

/// The seven-agent example network used for the hand-worked tables.
SocialNetwork example7_network();

/// Zachary's karate club, 34 members and 78 ties, labelled 1..34.
SocialNetwork karate_club_network();

/// Center is vertex 0 (label 1); leaves follow.
SocialNetwork star_network(std::size_t leaves);

SocialNetwork diad_network();

SocialNetwork path_network(std::size_t vertices);

/// Names accepted by builtin_network.
std::vector<std::string> builtin_network_names();

/// Throws std::invalid_argument for an unknown name. Accepts "star:<L>" and
/// "path:<N>" besides the fixed names.
SocialNetwork builtin_network(const std::string& name);

/// Outcome of parsing a whitespace-separated edge list.
struct EdgeListParse {
  SocialNetwork network;
  std::size_t duplicate_edges = 0;
  std::vector<std::string> warnings;
};

/// Parses "u v" pairs, one per line; '#' starts a comment, blank lines are
/// skipped, tokens after the second are ignored. Vertex labels are arbitrary
/// integers and are mapped to indices in increasing label order. Throws
/// std::runtime_error naming the line on malformed input or self-loops.
EdgeListParse parse_edge_list(std::istream& in, const std::string& source_name = "<input>");

EdgeListParse load_edge_list(const std::filesystem::path& path);

}  // namespace trustnet

#include "trustnet/network.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace trustnet {

namespace {

using EdgeList = std::vector<std::pair<std::size_t, std::size_t>>;

EdgeList from_labels(std::initializer_list<std::pair<std::size_t, std::size_t>> one_based) {
  EdgeList out;
  out.reserve(one_based.size());
  for (auto [u, v] : one_based) {
    out.emplace_back(u - 1, v - 1);
  }
  return out;
}

std::size_t parse_count(const std::string& text, const std::string& what) {
  std::size_t value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument("bad " + what + " in network name: '" + text + "'");
  }
  return value;
}

}  // namespace

SocialNetwork::SocialNetwork(std::size_t vertex_count, const EdgeList& edges)
    : adjacency_(vertex_count), labels_(vertex_count) {
  for (std::size_t v = 0; v < vertex_count; ++v) {
    labels_[v] = static_cast<long long>(v) + 1;
  }
  for (auto [u, v] : edges) {
    if (u >= vertex_count || v >= vertex_count) {
      throw std::out_of_range("edge endpoint outside the vertex range");
    }
    if (u == v) {
      throw std::invalid_argument("self-loops are not allowed");
    }
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& list : adjacency_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    edge_count_ += list.size();
  }
  edge_count_ /= 2;
}

bool SocialNetwork::has_edge(std::size_t u, std::size_t v) const {
  const auto& list = adjacency_.at(u);
  return std::binary_search(list.begin(), list.end(), v);
}

std::vector<std::size_t> SocialNetwork::two_hop(std::size_t v) const {
  std::vector<std::size_t> out;
  for (std::size_t j : neighbors(v)) {
    for (std::size_t l : adjacency_[j]) {
      if (l != v && !has_edge(v, l)) {
        out.push_back(l);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t SocialNetwork::max_degree() const {
  std::size_t best = 0;
  for (const auto& list : adjacency_) {
    best = std::max(best, list.size());
  }
  return best;
}

void SocialNetwork::set_labels(std::vector<long long> labels) {
  if (labels.size() != adjacency_.size()) {
    throw std::invalid_argument("label count must equal vertex count");
  }
  std::set<long long> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size()) {
    throw std::invalid_argument("vertex labels must be distinct");
  }
  labels_ = std::move(labels);
}

std::size_t SocialNetwork::index_of(long long label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  return static_cast<std::size_t>(it - labels_.begin());
}

EdgeList SocialNetwork::edges() const {
  EdgeList out;
  out.reserve(edge_count_);
  for (std::size_t u = 0; u < adjacency_.size(); ++u) {
    for (std::size_t v : adjacency_[u]) {
      if (u < v) {
        out.emplace_back(u, v);
      }
    }
  }
  return out;
}

SocialNetwork example7_network() {
  return SocialNetwork(7, from_labels({{1, 2}, {1, 5}, {1, 7}, {2, 3}, {2, 4}, {2, 5},
                                       {3, 5}, {3, 7}, {4, 5}, {4, 6}, {4, 7}, {6, 7}}));
}

SocialNetwork karate_club_network() {
  return SocialNetwork(
      34, from_labels({{1, 2},   {1, 3},   {1, 4},   {1, 5},   {1, 6},   {1, 7},   {1, 8},
                       {1, 9},   {1, 11},  {1, 12},  {1, 13},  {1, 14},  {1, 18},  {1, 20},
                       {1, 22},  {1, 32},  {2, 3},   {2, 4},   {2, 8},   {2, 14},  {2, 18},
                       {2, 20},  {2, 22},  {2, 31},  {3, 4},   {3, 8},   {3, 9},   {3, 10},
                       {3, 14},  {3, 28},  {3, 29},  {3, 33},  {4, 8},   {4, 13},  {4, 14},
                       {5, 7},   {5, 11},  {6, 7},   {6, 11},  {6, 17},  {7, 17},  {9, 31},
                       {9, 33},  {9, 34},  {10, 34}, {14, 34}, {15, 33}, {15, 34}, {16, 33},
                       {16, 34}, {19, 33}, {19, 34}, {20, 34}, {21, 33}, {21, 34}, {23, 33},
                       {23, 34}, {24, 26}, {24, 28}, {24, 30}, {24, 33}, {24, 34}, {25, 26},
                       {25, 28}, {25, 32}, {26, 32}, {27, 30}, {27, 34}, {28, 34}, {29, 32},
                       {29, 34}, {30, 33}, {30, 34}, {31, 33}, {31, 34}, {32, 33}, {32, 34},
                       {33, 34}}));
}

SocialNetwork star_network(std::size_t leaves) {
  EdgeList edges;
  for (std::size_t leaf = 1; leaf <= leaves; ++leaf) {
    edges.emplace_back(0, leaf);
  }
  return SocialNetwork(leaves + 1, edges);
}

SocialNetwork diad_network() { return SocialNetwork(2, {{0, 1}}); }

SocialNetwork path_network(std::size_t vertices) {
  EdgeList edges;
  for (std::size_t v = 1; v < vertices; ++v) {
    edges.emplace_back(v - 1, v);
  }
  return SocialNetwork(vertices, edges);
}

std::vector<std::string> builtin_network_names() {
  return {"example7", "karate_club", "diad", "star:<leaves>", "path:<vertices>"};
}

SocialNetwork builtin_network(const std::string& name) {
  if (name == "example7") return example7_network();
  if (name == "karate_club") return karate_club_network();
  if (name == "diad") return diad_network();
  if (name.starts_with("star:")) return star_network(parse_count(name.substr(5), "leaf count"));
  if (name.starts_with("path:")) return path_network(parse_count(name.substr(5), "vertex count"));
  throw std::invalid_argument("unknown builtin network '" + name + "'");
}

EdgeListParse parse_edge_list(std::istream& in, const std::string& source_name) {
  std::vector<std::pair<long long, long long>> raw;
  std::set<std::pair<long long, long long>> seen;
  EdgeListParse result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    std::string first;
    std::string second;
    if (!(fields >> first)) {
      continue;
    }
    auto fail = [&](const std::string& why) {
      throw std::runtime_error(source_name + ":" + std::to_string(line_no) + ": " + why);
    };
    if (!(fields >> second)) {
      fail("expected two vertex ids");
    }
    auto parse_id = [&](const std::string& token) {
      long long id = 0;
      const char* end = token.data() + token.size();
      auto [ptr, ec] = std::from_chars(token.data(), end, id);
      if (ec != std::errc() || ptr != end) {
        fail("invalid vertex id '" + token + "'");
      }
      return id;
    };
    const long long u = parse_id(first);
    const long long v = parse_id(second);
    if (u == v) {
      fail("self-loop on vertex " + first);
    }
    const auto key = std::minmax(u, v);
    if (!seen.insert(key).second) {
      ++result.duplicate_edges;
      result.warnings.push_back(source_name + ":" + std::to_string(line_no) +
                                ": duplicate edge " + first + " " + second + " collapsed");
      continue;
    }
    raw.emplace_back(u, v);
  }
  std::map<long long, std::size_t> index;
  for (auto [u, v] : raw) {
    index.emplace(u, 0);
    index.emplace(v, 0);
  }
  std::vector<long long> labels;
  labels.reserve(index.size());
  for (auto& [label, idx] : index) {
    idx = labels.size();
    labels.push_back(label);
  }
  EdgeList edges;
  edges.reserve(raw.size());
  for (auto [u, v] : raw) {
    edges.emplace_back(index[u], index[v]);
  }
  result.network = SocialNetwork(labels.size(), edges);
  result.network.set_labels(std::move(labels));
  return result;
}

EdgeListParse load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open edge list '" + path.string() + "'");
  }
  return parse_edge_list(in, path.string());
}

}  // namespace trustnet

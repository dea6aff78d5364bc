#include "ambush/network.hpp"

#include <cmath>
#include <queue>
#include <set>

#include <json.hpp>

#include "ambush/error.hpp"
#include "ambush/io.hpp"

namespace ambush {

std::vector<std::vector<int>> Network::out_edges() const {
  std::vector<std::vector<int>> out(nodes.size());
  for (const Edge& e : edges) out[e.tail].push_back(e.id);
  return out;
}

std::vector<std::vector<int>> Network::in_edges() const {
  std::vector<std::vector<int>> in(nodes.size());
  for (const Edge& e : edges) in[e.head].push_back(e.id);
  return in;
}

namespace {

[[noreturn]] void violated(const std::string& what) {
  throw Error(ErrorKind::kContract, "invalid network: " + what);
}

}  // namespace

void validate(const Network& net) {
  const int m = net.num_nodes();
  for (int i = 0; i < m; ++i) {
    const Node& n = net.nodes[i];
    if (n.id != i) violated("node ids must be 0..m-1 in order");
    if (!std::isfinite(n.pos.x) || !std::isfinite(n.pos.y)) violated("node " + std::to_string(i) + " position is not finite");
    if (!std::isfinite(n.alpha) || n.alpha < 0.0) violated("node " + std::to_string(i) + " has negative or non-finite alpha");
  }
  if (net.origin < 0 || net.origin >= m || net.destination < 0 || net.destination >= m) {
    violated("origin/destination out of range");
  }
  if (net.origin == net.destination) violated("origin equals destination");
  if (net.nodes[net.origin].alpha != 0.0 || net.nodes[net.destination].alpha != 0.0) {
    violated("origin and destination must have alpha 0");
  }
  std::set<std::pair<int, int>> pairs;
  for (int k = 0; k < net.num_edges(); ++k) {
    const Edge& e = net.edges[k];
    const std::string tag = "edge " + std::to_string(k);
    if (e.id != k) violated("edge ids must be 0..n-1 in order");
    if (e.tail < 0 || e.tail >= m || e.head < 0 || e.head >= m) violated(tag + " endpoint out of range");
    if (e.tail == e.head) violated(tag + " is a self-loop");
    if (!pairs.insert({e.tail, e.head}).second) violated(tag + " duplicates an ordered node pair");
    if (e.head == net.origin) violated(tag + " enters the origin");
    if (e.tail == net.destination) violated(tag + " leaves the destination");
    const double d = distance(net.nodes[e.tail].pos, net.nodes[e.head].pos);
    if (!(e.length > 0.0) || std::abs(e.length - d) > 1e-9 * std::max(1.0, d)) {
      violated(tag + " length differs from endpoint distance");
    }
  }
}

namespace {

std::vector<bool> reach(const Network& net, int start, bool forward) {
  const auto adj = forward ? net.out_edges() : net.in_edges();
  std::vector<bool> seen(net.nodes.size(), false);
  std::queue<int> q;
  seen[start] = true;
  q.push(start);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int eid : adj[u]) {
      const int v = forward ? net.edges[eid].head : net.edges[eid].tail;
      if (!seen[v]) {
        seen[v] = true;
        q.push(v);
      }
    }
  }
  return seen;
}

}  // namespace

std::vector<bool> useful_nodes(const Network& net) {
  const auto from_origin = reach(net, net.origin, true);
  const auto to_dest = reach(net, net.destination, false);
  std::vector<bool> keep(net.nodes.size());
  for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = from_origin[i] && to_dest[i];
  return keep;
}

bool has_origin_destination_path(const Network& net) {
  return reach(net, net.origin, true)[net.destination];
}

Network induced_subnetwork(const Network& net, const std::vector<bool>& keep) {
  std::vector<int> remap(net.nodes.size(), -1);
  Network out;
  for (const Node& n : net.nodes) {
    if (!keep[n.id]) continue;
    remap[n.id] = out.num_nodes();
    out.nodes.push_back({out.num_nodes(), n.pos, n.alpha});
  }
  if (remap[net.origin] < 0 || remap[net.destination] < 0) {
    throw Error(ErrorKind::kContract, "subnetwork must keep origin and destination");
  }
  out.origin = remap[net.origin];
  out.destination = remap[net.destination];
  for (const Edge& e : net.edges) {
    if (remap[e.tail] < 0 || remap[e.head] < 0) continue;
    out.edges.push_back({out.num_edges(), remap[e.tail], remap[e.head], e.length});
  }
  return out;
}

std::string network_to_json(const Network& net) {
  nlohmann::ordered_json j;
  j["origin"] = net.origin;
  j["destination"] = net.destination;
  auto& nodes = j["nodes"] = nlohmann::ordered_json::array();
  for (const Node& n : net.nodes) {
    nodes.push_back({{"id", n.id}, {"x", n.pos.x}, {"y", n.pos.y}, {"alpha", n.alpha}});
  }
  auto& edges = j["edges"] = nlohmann::ordered_json::array();
  for (const Edge& e : net.edges) {
    edges.push_back({{"id", e.id}, {"tail", e.tail}, {"head", e.head}, {"length", e.length}});
  }
  return j.dump(1) + "\n";
}

Network network_from_json(const std::string& text) {
  Network net;
  try {
    const auto j = nlohmann::json::parse(text);
    net.origin = j.at("origin").get<int>();
    net.destination = j.at("destination").get<int>();
    for (const auto& n : j.at("nodes")) {
      net.nodes.push_back({n.at("id").get<int>(), {n.at("x").get<double>(), n.at("y").get<double>()},
                           n.at("alpha").get<double>()});
    }
    for (const auto& e : j.at("edges")) {
      net.edges.push_back({e.at("id").get<int>(), e.at("tail").get<int>(), e.at("head").get<int>(),
                           e.at("length").get<double>()});
    }
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::kParse, std::string("network JSON: ") + ex.what());
  }
  validate(net);
  return net;
}

Network load_network(const std::filesystem::path& path) { return network_from_json(read_file(path)); }

void save_network(const std::filesystem::path& path, const Network& net) {
  write_file_atomic(path, network_to_json(net));
}

}  // namespace ambush

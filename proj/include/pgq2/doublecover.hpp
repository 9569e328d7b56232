#pragma once

// Canonical resolution of a double cover of an abelian surface branched on
// a curve of class L_A with L_A^2 = L2. The singular points of the branch
// curve (and the infinitely near ones met during resolution) carry even
// multiplicities d_i = 2 m_i.

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "pgq2/error.hpp"

namespace pgq2 {

struct SingularityNode {
  std::string id;
  long long d = 2;
  std::optional<std::string> parent;  // the point this one is infinitely near to
};

class SingularityForest {
 public:
  SingularityForest() = default;
  explicit SingularityForest(std::vector<SingularityNode> nodes) : nodes_(std::move(nodes)) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const auto& n = nodes_[i];
      if (n.id.empty()) throw input_error("node ids must be non-empty");
      if (!index_.emplace(n.id, i).second) throw input_error("duplicate node id " + n.id);
      if (n.d < 2 || n.d % 2 != 0)
        throw input_error("node " + n.id + ": multiplicity must be even and >= 2, got " + std::to_string(n.d));
    }
    for (const auto& n : nodes_)
      if (n.parent && !index_.contains(*n.parent))
        throw input_error("node " + n.id + ": unknown parent " + *n.parent);
    for (const auto& n : nodes_) {
      std::size_t steps = 0;
      for (const SingularityNode* p = &n; p->parent; p = &node(*p->parent))
        if (++steps > nodes_.size()) throw input_error("parent links contain a cycle through " + n.id);
      max_depth_ = std::max(max_depth_, steps);
    }
  }

  const std::vector<SingularityNode>& nodes() const { return nodes_; }
  bool contains(const std::string& id) const { return index_.contains(id); }

  const SingularityNode& node(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw input_error("unknown node id " + id);
    return nodes_[it->second];
  }

  std::vector<const SingularityNode*> children(const std::string& id) const {
    std::vector<const SingularityNode*> out;
    for (const auto& n : nodes_)
      if (n.parent == id) out.push_back(&n);
    return out;
  }

  // All nodes whose parent chain reaches id.
  std::vector<const SingularityNode*> descendants(const std::string& id) const {
    std::vector<const SingularityNode*> out;
    for (const auto& n : nodes_)
      for (auto p = n.parent; p; p = node(*p).parent)
        if (*p == id) {
          out.push_back(&n);
          break;
        }
    return out;
  }

  // Only the first infinitesimal neighbourhood is analysed; deeper chains are
  // accepted but flagged.
  bool beyond_first_neighbourhood() const { return max_depth_ > 1; }

 private:
  std::vector<SingularityNode> nodes_;
  std::map<std::string, std::size_t> index_;
  std::size_t max_depth_ = 0;
};

struct BranchData {
  long long L2 = 0;
  SingularityForest forest;
};

template <class Json>
BranchData branch_data_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("L2") || !j.contains("nodes"))
    throw input_error("forest JSON must be {\"L2\": n, \"nodes\": [{\"id\", \"d\", \"parent\"}]}");
  if (!j.at("L2").is_number_integer()) throw input_error("L2 must be an integer");
  if (!j.at("nodes").is_array()) throw input_error("\"nodes\" must be an array");
  std::vector<SingularityNode> nodes;
  for (const auto& n : j.at("nodes")) {
    if (!n.is_object() || !n.contains("id") || !n.contains("d")) throw input_error("each node needs \"id\" and \"d\"");
    if (!n.at("id").is_string()) throw input_error("node id must be a string");
    if (!n.at("d").is_number_integer()) throw input_error("node d must be an integer");
    SingularityNode node{n.at("id").template get<std::string>(), n.at("d").template get<long long>(), std::nullopt};
    if (n.contains("parent") && !n.at("parent").is_null()) {
      if (!n.at("parent").is_string()) throw input_error("node parent must be a string or null");
      node.parent = n.at("parent").template get<std::string>();
    }
    nodes.push_back(std::move(node));
  }
  return {j.at("L2").template get<long long>(), SingularityForest(std::move(nodes))};
}

inline BranchData read_branch_data(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open forest file " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw input_error("forest file " + path + " is not valid JSON: " + e.what());
  }
  return branch_data_from_json(j);
}

inline bool is_negligible(const SingularityForest& f, const std::string& id) {
  if (f.node(id).d != 2) return false;
  const auto desc = f.descendants(id);
  return std::all_of(desc.begin(), desc.end(), [](const SingularityNode* n) { return n->d <= 2; });
}

struct OddPair {
  std::string parent;
  std::string child;
  long long k = 0;  // a [2k+1, 2k+1] point; k = 1 is a [3,3] point
  friend bool operator==(const OddPair&, const OddPair&) = default;
};

// Parent with d = 2k and a direct child with d = 2k + 2.
inline std::vector<OddPair> detect_33_pairs(const SingularityForest& f) {
  std::vector<OddPair> out;
  for (const auto& n : f.nodes()) {
    if (!n.parent) continue;
    const auto& p = f.node(*n.parent);
    if (n.d == p.d + 2) out.push_back({p.id, n.id, p.d / 2});
  }
  std::sort(out.begin(), out.end(),
            [](const OddPair& a, const OddPair& b) { return std::tie(a.parent, a.child) < std::tie(b.parent, b.child); });
  return out;
}

struct CoverInvariants {
  long long chi = 0;
  long long K2_resolved = 0;
  long long K2_minimal = 0;  // after contracting the (-1)-curves coming from odd pairs
  std::vector<std::string> negligible_ids;
  std::vector<OddPair> odd_pairs;
  bool has_33_pair = false;
  bool beyond_first_neighbourhood = false;
  std::string minimality_note;
  std::vector<std::string> notes;
};

inline CoverInvariants invariants(long long L2, const SingularityForest& f) {
  if (L2 <= 0 || L2 % 2 != 0) throw input_error("L2 must be even and positive, got " + std::to_string(L2));
  long long sum_mm = 0;   // sum m(m-1)
  long long sum_sq = 0;   // sum (m-1)^2
  for (const auto& n : f.nodes()) {
    const long long m = n.d / 2;
    sum_mm += m * (m - 1);
    sum_sq += (m - 1) * (m - 1);
  }
  if ((L2 - sum_mm) % 2 != 0)
    throw input_error("parity failure: L2 - sum m_i(m_i - 1) = " + std::to_string(L2 - sum_mm) + " is odd");

  CoverInvariants inv;
  inv.chi = (L2 - sum_mm) / 2;
  inv.K2_resolved = 2 * L2 - 2 * sum_sq;
  for (const auto& n : f.nodes())
    if (is_negligible(f, n.id)) inv.negligible_ids.push_back(n.id);
  std::sort(inv.negligible_ids.begin(), inv.negligible_ids.end());
  inv.odd_pairs = detect_33_pairs(f);
  inv.has_33_pair = std::any_of(inv.odd_pairs.begin(), inv.odd_pairs.end(), [](const OddPair& p) { return p.k == 1; });
  inv.K2_minimal = inv.K2_resolved + static_cast<long long>(inv.odd_pairs.size());
  inv.beyond_first_neighbourhood = f.beyond_first_neighbourhood();

  if (inv.odd_pairs.empty()) {
    inv.minimality_note = "no [2k+1,2k+1] point; K^2 of the resolution is taken as the minimal model's";
  } else {
    inv.minimality_note = "the resolution contains " + std::to_string(inv.odd_pairs.size()) +
                          " (-1)-curve(s) over [2k+1,2k+1] points; minimal model K^2 = " +
                          std::to_string(inv.K2_minimal);
  }
  if (std::all_of(f.nodes().begin(), f.nodes().end(), [](const SingularityNode& n) { return n.d == 2; })) {
    std::ostringstream s;
    s << "all m_i = 1: chi = L2/2 = " << inv.chi << " and K^2 = 2 L2 = " << inv.K2_resolved
      << "; imposing chi = 1 instead would force L2 = 2 and K^2 = 4";
    inv.notes.push_back(s.str());
  }
  if (inv.beyond_first_neighbourhood)
    inv.notes.push_back("forest has infinitely near points beyond the first neighbourhood; not covered by the case analysis");
  return inv;
}

struct BranchScenario {
  std::string tag;  // i, ii, iii
  std::string description;
  long long L2 = 4;
  SingularityForest forest;
  CoverInvariants inv;
  bool type_II = false;
};

inline std::vector<BranchScenario> branch_scenarios() {
  auto make = [](std::string tag, std::string desc, std::vector<SingularityNode> nodes, bool ii) {
    SingularityForest f(std::move(nodes));
    auto inv = invariants(4, f);
    return BranchScenario{std::move(tag), std::move(desc), 4, f, std::move(inv), ii};
  };
  return {
      make("i", "C irreducible with an ordinary quadruple point at o", {{"o", 4, std::nullopt}}, false),
      make("ii", "C irreducible with an ordinary quadruple point at o and one ordinary double point",
           {{"o", 4, std::nullopt}, {"x", 2, std::nullopt}}, false),
      make("iii", "C = C1 + C2, each nodal at p, C1 C2 = 4", {{"p", 4, std::nullopt}}, true),
  };
}

template <class Json>
void to_json(Json& j, const SingularityForest& f) {
  j = Json::array();
  for (const auto& n : f.nodes()) {
    Json o = Json::object();
    o["id"] = n.id;
    o["d"] = n.d;
    o["parent"] = n.parent ? Json(*n.parent) : Json(nullptr);
    j.push_back(o);
  }
}

template <class Json>
void to_json(Json& j, const CoverInvariants& inv) {
  j = Json::object();
  j["chi"] = inv.chi;
  j["K2_resolved"] = inv.K2_resolved;
  j["K2_minimal"] = inv.K2_minimal;
  j["negligible_ids"] = inv.negligible_ids;
  Json pairs = Json::array();
  for (const auto& p : inv.odd_pairs) {
    Json o = Json::object();
    o["parent"] = p.parent;
    o["child"] = p.child;
    o["kind"] = "[" + std::to_string(2 * p.k + 1) + "," + std::to_string(2 * p.k + 1) + "]";
    pairs.push_back(o);
  }
  j["odd_pairs"] = pairs;
  j["has_33_pair"] = inv.has_33_pair;
  j["beyond_first_neighbourhood"] = inv.beyond_first_neighbourhood;
  j["minimality_note"] = inv.minimality_note;
  j["notes"] = inv.notes;
}

template <class Json>
void to_json(Json& j, const BranchScenario& s) {
  j = Json::object();
  j["case"] = s.tag;
  j["description"] = s.description;
  j["L2"] = s.L2;
  j["forest"] = s.forest;
  j["invariants"] = s.inv;
  j["type_II"] = s.type_II;
}

}  // namespace pgq2

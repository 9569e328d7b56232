#pragma once

// Orbit and closure engine for finite group actions given by a list of
// generators, plus the monodromy reports built on it: the orbit partition of
// the 2-torsion characters, the permutation group T on psi1..psi12, and the
// forgetful cover degrees.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "pgq2/error.hpp"
#include "pgq2/lattice.hpp"
#include "pgq2/paramodular.hpp"

namespace pgq2 {

template <class State>
class LabeledSet {
 public:
  LabeledSet(std::vector<State> elements, std::vector<std::string> labels)
      : elements_(std::move(elements)), labels_(std::move(labels)) {
    if (elements_.size() != labels_.size()) throw input_error("labeled set: element and label counts differ");
    for (std::size_t i = 0; i < elements_.size(); ++i)
      if (!index_.emplace(elements_[i], i).second) throw input_error("labeled set: duplicate element " + labels_[i]);
  }

  std::size_t size() const { return elements_.size(); }
  const State& element(std::size_t i) const { return elements_.at(i); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<State>& elements() const { return elements_; }
  const std::vector<std::string>& labels() const { return labels_; }

  std::optional<std::size_t> index_of(const State& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::vector<State> elements_;
  std::vector<std::string> labels_;
  std::map<State, std::size_t> index_;
};

// Breadth-first closure of {seed} under the generators. Each BFS level is
// sorted by the state order before it is appended, so the listing is
// reproducible.
template <class State, class Gen, class Action>
std::vector<State> orbit(const State& seed, std::span<const Gen> gens, Action&& act) {
  std::set<State> seen{seed};
  std::vector<State> out{seed};
  std::vector<State> frontier{seed};
  while (!frontier.empty()) {
    std::vector<State> next;
    for (const auto& s : frontier)
      for (const auto& g : gens) {
        State t = act(g, s);
        if (seen.insert(t).second) next.push_back(std::move(t));
      }
    std::sort(next.begin(), next.end());
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

using Word = std::vector<std::size_t>;

struct OrbitPartition {
  // Indices into the labeled set; the first index of each block is its representative.
  std::vector<std::vector<std::size_t>> blocks;
  // witnesses[i]: generator indices, applied first to last, carrying the
  // representative of i's block to element i.
  std::vector<Word> witnesses;
  std::vector<std::size_t> block_of;

  std::vector<std::size_t> sizes() const {
    std::vector<std::size_t> s;
    for (const auto& b : blocks) s.push_back(b.size());
    return s;
  }
};

template <class State, class Gen, class Action>
State replay(const State& start, const Word& word, std::span<const Gen> gens, Action&& act) {
  State s = start;
  for (std::size_t g : word) s = act(gens[g], s);
  return s;
}

template <class State, class Gen, class Action>
OrbitPartition orbits_all(const LabeledSet<State>& set, std::span<const Gen> gens, Action&& act) {
  constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);
  OrbitPartition part;
  part.witnesses.assign(set.size(), {});
  part.block_of.assign(set.size(), kUnassigned);

  for (std::size_t rep = 0; rep < set.size(); ++rep) {
    if (part.block_of[rep] != kUnassigned) continue;
    const std::size_t block_id = part.blocks.size();
    std::vector<std::size_t> block{rep};
    part.block_of[rep] = block_id;
    std::vector<std::size_t> frontier{rep};
    while (!frontier.empty()) {
      std::vector<std::size_t> next;
      for (std::size_t i : frontier)
        for (std::size_t g = 0; g < gens.size(); ++g) {
          auto j = set.index_of(act(gens[g], set.element(i)));
          if (!j)
            throw input_error("set is not stable: generator " + std::to_string(g) + " sends " + set.label(i) +
                              " outside the set");
          if (part.block_of[*j] != kUnassigned) continue;
          part.block_of[*j] = block_id;
          part.witnesses[*j] = part.witnesses[i];
          part.witnesses[*j].push_back(g);
          next.push_back(*j);
        }
      std::sort(next.begin(), next.end(),
                [&](std::size_t a, std::size_t b) { return set.element(a) < set.element(b); });
      block.insert(block.end(), next.begin(), next.end());
      frontier = std::move(next);
    }
    part.blocks.push_back(std::move(block));
  }
  return part;
}

class Permutation {
 public:
  explicit Permutation(std::vector<std::size_t> images) : images_(std::move(images)) {
    std::vector<bool> hit(images_.size(), false);
    for (std::size_t x : images_) {
      if (x >= images_.size() || hit[x]) throw input_error("permutation images are not a bijection");
      hit[x] = true;
    }
  }

  static Permutation identity(std::size_t degree) {
    std::vector<std::size_t> im(degree);
    std::iota(im.begin(), im.end(), std::size_t{0});
    return Permutation(std::move(im));
  }

  // 0-based cycles.
  static Permutation from_cycles(std::size_t degree, const std::vector<std::vector<std::size_t>>& cycles) {
    std::vector<std::size_t> im(degree);
    std::iota(im.begin(), im.end(), std::size_t{0});
    for (const auto& c : cycles)
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] >= degree) throw input_error("cycle entry out of range");
        im[c[k]] = c[(k + 1) % c.size()];
      }
    return Permutation(std::move(im));
  }

  std::size_t degree() const { return images_.size(); }
  std::size_t operator()(std::size_t i) const { return images_.at(i); }
  const std::vector<std::size_t>& images() const { return images_; }

  // (p * q)(i) = p(q(i))
  Permutation operator*(const Permutation& q) const {
    if (q.degree() != degree()) throw input_error("cannot compose permutations of different degrees");
    std::vector<std::size_t> im(degree());
    for (std::size_t i = 0; i < degree(); ++i) im[i] = images_[q.images_[i]];
    return Permutation(std::move(im));
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  // Non-trivial cycles, each starting at its smallest point, ordered by that point.
  std::vector<std::vector<std::size_t>> cycles() const {
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> seen(degree(), false);
    for (std::size_t i = 0; i < degree(); ++i) {
      if (seen[i] || images_[i] == i) continue;
      std::vector<std::size_t> c;
      for (std::size_t j = i; !seen[j]; j = images_[j]) {
        seen[j] = true;
        c.push_back(j);
      }
      out.push_back(std::move(c));
    }
    return out;
  }

  // "(a b)(c d e)" using labels, or 1-based numbers when labels is empty.
  std::string cycle_string(const std::vector<std::string>& labels = {}) const {
    std::string s;
    for (const auto& c : cycles()) {
      s += '(';
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (k) s += ' ';
        s += labels.empty() ? std::to_string(c[k] + 1) : labels.at(c[k]);
      }
      s += ')';
    }
    return s.empty() ? "()" : s;
  }

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<std::size_t> images_;
};

// The permutation of set induced by g. Throws naming the first escaping element.
template <class State, class Gen, class Action>
Permutation permutation_of(const Gen& g, const LabeledSet<State>& set, Action&& act) {
  std::vector<std::size_t> im(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    auto j = set.index_of(act(g, set.element(i)));
    if (!j) throw input_error("set is not stable under the matrix: " + set.label(i) + " escapes");
    im[i] = *j;
  }
  return Permutation(std::move(im));
}

struct ClosureReport {
  std::size_t order = 0;  // elements enumerated; a lower bound when truncated
  bool truncated = false;
  bool transitive = false;
  std::vector<std::vector<std::size_t>> orbits;  // point orbits, each sorted

  std::vector<std::size_t> orbit_sizes() const {
    std::vector<std::size_t> s;
    for (const auto& o : orbits) s.push_back(o.size());
    return s;
  }
};

inline constexpr std::size_t kDefaultClosureCap = 1'000'000;

struct ImagesHash {
  std::size_t operator()(const std::vector<std::size_t>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (std::size_t x : v) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

inline ClosureReport group_closure(std::span<const Permutation> perms, std::size_t degree,
                                   std::size_t cap = kDefaultClosureCap) {
  if (degree == 0) throw input_error("group closure needs degree >= 1");
  for (const auto& p : perms)
    if (p.degree() != degree)
      throw input_error("permutation of degree " + std::to_string(p.degree()) + " given for degree " +
                        std::to_string(degree));

  ClosureReport rep;

  std::vector<bool> placed(degree, false);
  for (std::size_t start = 0; start < degree; ++start) {
    if (placed[start]) continue;
    std::vector<std::size_t> orb{start};
    placed[start] = true;
    for (std::size_t k = 0; k < orb.size(); ++k)
      for (const auto& p : perms) {
        std::size_t y = p(orb[k]);
        if (!placed[y]) {
          placed[y] = true;
          orb.push_back(y);
        }
      }
    std::sort(orb.begin(), orb.end());
    rep.orbits.push_back(std::move(orb));
  }
  rep.transitive = rep.orbits.front().size() == degree;

  std::unordered_set<std::vector<std::size_t>, ImagesHash> elements;
  auto id = Permutation::identity(degree);
  elements.insert(id.images());
  std::vector<Permutation> frontier{id};
  while (!frontier.empty() && !rep.truncated) {
    std::vector<Permutation> next;
    for (const auto& x : frontier) {
      for (const auto& p : perms) {
        Permutation y = p * x;
        if (elements.insert(y.images()).second) {
          next.push_back(std::move(y));
          if (elements.size() >= cap) {
            rep.truncated = true;
            break;
          }
        }
      }
      if (rep.truncated) break;
    }
    frontier = std::move(next);
  }
  rep.order = elements.size();
  return rep;
}

// ---------------------------------------------------------------------------
// Monodromy on 2-torsion characters and root pairs.

inline Character act_on_character(const ParamodularMatrix& m, const Character& c) { return act(m, c); }
inline RootPair act_on_pair(const ParamodularMatrix& m, const RootPair& p) { return act_pair(m, p); }

// chi0..chi3, psi1..psi12.
inline LabeledSet<Character> characters2_set(const CharacterTable& table) {
  return LabeledSet<Character>(table.all(), table.labels());
}

inline LabeledSet<Character> psi_set(const CharacterTable& table) {
  std::vector<Character> elems(table.psi().begin(), table.psi().end());
  std::vector<std::string> labels;
  for (std::size_t j = 1; j <= elems.size(); ++j) labels.push_back("psi" + std::to_string(j));
  return LabeledSet<Character>(std::move(elems), std::move(labels));
}

inline std::string pair_label(const RootPair& p, const CharacterTable& table) {
  return table.label_of(p.base()).value_or(exponent_string(p.base())) + "|" + exponent_string(p.root());
}

// The 48 pairs (Q, Q^{1/2}), Q in im phi_2^x, labelled "chi1|0,0,1,0".
inline LabeledSet<RootPair> pairs_set(const SymplecticLattice& lattice, const CharacterTable& table) {
  std::vector<RootPair> elems = root_pairs(lattice);
  std::vector<std::string> labels;
  for (const auto& p : elems) labels.push_back(pair_label(p, table));
  return LabeledSet<RootPair>(std::move(elems), std::move(labels));
}

// Cover degrees of the forgetful maps to the moduli of (1,2)-polarized
// abelian surfaces, as asserted, and as recomputed by orbit enumeration.
inline constexpr std::size_t kDegreeComponentA = 12;
inline constexpr std::size_t kDegreeComponentB = 3;
inline constexpr std::size_t kDegreePairs = 48;

struct CoverComponent {
  std::string name;
  std::string description;
  std::size_t asserted_degree = 0;
  std::size_t computed_degree = 0;
  std::string representative;
};

struct ComponentReport {
  std::vector<CoverComponent> components;  // A[2]^(a), A[2]^(b), A[2,4]
  std::size_t pair_factor_base = 0;        // |im phi_2^x|
  std::size_t pair_factor_roots = 0;       // |square_roots(Q)|
};

// Throws consistency_error when an asserted degree disagrees with the orbit engine.
inline ComponentReport component_report() {
  const auto lattice = make_lattice(2);
  const CharacterTable table(lattice);
  const auto gens = standard_generators();
  const std::span<const ParamodularMatrix> gspan(gens);

  const auto chars = characters2_set(table);
  const auto part = orbits_all(chars, gspan, act_on_character);
  auto block_size_of = [&](const Character& c) { return part.blocks[part.block_of[*chars.index_of(c)]].size(); };

  const auto pairs = pairs_set(lattice, table);
  const auto pair_part = orbits_all(pairs, gspan, act_on_pair);

  ComponentReport rep;
  rep.components.push_back({"A_Delta^(a)[2]", "pairs (A, Q) with Q a 2-torsion bundle not in im phi_2",
                            kDegreeComponentA, block_size_of(table.psi(1)), "psi1"});
  rep.components.push_back({"A_Delta^(b)[2]", "pairs (A, Q) with Q in im phi_2^x", kDegreeComponentB,
                            block_size_of(table.chi(1)), "chi1"});
  rep.components.push_back({"A_Delta[2,4]", "triples (A, Q, Q^(1/2)) with Q in im phi_2^x", kDegreePairs,
                            pair_part.blocks.size() == 1 ? pairs.size() : pair_part.blocks.front().size(),
                            pairs.label(0)});

  rep.pair_factor_base = 0;
  for (const auto& q : im_phi2(lattice))
    if (!q.is_trivial()) ++rep.pair_factor_base;
  rep.pair_factor_roots = square_roots(table.chi(1)).size();

  for (const auto& c : rep.components)
    if (c.asserted_degree != c.computed_degree)
      throw consistency_error(c.name + ": asserted cover degree " + std::to_string(c.asserted_degree) +
                              " but the orbit has size " + std::to_string(c.computed_degree) +
                              (c.name == "A_Delta[2,4]"
                                   ? "; the generator family must be augmented with further paramodular matrices"
                                   : ""));
  if (rep.pair_factor_base * rep.pair_factor_roots != kDegreePairs)
    throw consistency_error("|im phi_2^x| * |square roots| does not equal the pair cover degree");
  return rep;
}

}  // namespace pgq2

#pragma once

// From a torsion datum (Q, Q^{1/2}) on a (1,2)-polarized abelian surface to
// the surface type and its invariants and moduli data.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pgq2/chern.hpp"
#include "pgq2/doublecover.hpp"
#include "pgq2/error.hpp"
#include "pgq2/lattice.hpp"
#include "pgq2/orbits.hpp"

namespace pgq2 {

enum class SurfaceType { Ia, Ib, II, PG3, Invalid };

inline std::string to_string(SurfaceType t) {
  switch (t) {
    case SurfaceType::Ia: return "Ia";
    case SurfaceType::Ib: return "Ib";
    case SurfaceType::II: return "II";
    case SurfaceType::PG3: return "PG3";
    case SurfaceType::Invalid: return "Invalid";
  }
  return {};
}

inline constexpr SurfaceType kSurfaceTypes[] = {SurfaceType::Ia, SurfaceType::Ib, SurfaceType::II};

struct Classification {
  SurfaceType type = SurfaceType::Invalid;
  std::string reason;
};

inline Classification classify(const Character& q, const Character& root) {
  if (q.n() != 2) throw input_error("Q must be a 2-torsion character (n = 2)");
  if (root.n() != 4) throw input_error("the square root must be given with n = 4");
  if (!(root.square() == q))
    throw input_error("root [" + exponent_string(root) + "] does not square to Q [" + exponent_string(q) + "]");

  const auto lattice = make_lattice(2);
  if (!is_in_im_phi2(lattice, q))
    return {SurfaceType::Invalid,
            "empty linear system: |L^2 (x) Q (x) I_o^4| is empty unless Q is in im phi_2, so no branch curve exists"};

  if (q.is_trivial()) {
    if (root.is_trivial()) return {SurfaceType::PG3, "Q = Q^(1/2) = O_A gives p_g = q = 3"};
    if (is_in_im_phi2_times(lattice, root)) return {SurfaceType::Ib, "Q = O_A, Q^(1/2) in im phi_2^x"};
    return {SurfaceType::Ia, "Q = O_A, Q^(1/2) not in im phi_2"};
  }
  if (root.order() != 4)
    throw consistency_error("Q in im phi_2^x but the square root [" + exponent_string(root) + "] has order " +
                            std::to_string(root.order()));
  return {SurfaceType::II, "Q in im phi_2^x, Q^(1/2) of order 4"};
}

// A fixed pair realising each type.
inline std::pair<Character, Character> representative_pair(SurfaceType t) {
  const CharacterTable table(make_lattice(2));
  switch (t) {
    case SurfaceType::Ia: return {Character::trivial(2), table.psi(1).lifted()};
    case SurfaceType::Ib: return {Character::trivial(2), table.chi(1).lifted()};
    case SurfaceType::II: return {table.chi(1), square_roots(table.chi(1)).front()};
    case SurfaceType::PG3: return {Character::trivial(2), Character::trivial(4)};
    case SurfaceType::Invalid: return {table.psi(1), square_roots(table.psi(1)).front()};
  }
  throw input_error("unknown surface type");
}

struct BranchKind {
  std::vector<std::string> cases;  // branch configuration tags, see branch_scenarios()
  std::string description;
  bool D_B_connected = true;
};

inline BranchKind branch_curve_kind(SurfaceType t) {
  switch (t) {
    case SurfaceType::Ia:
    case SurfaceType::Ib:
      // Ia and Ib differ only in the square root, not in the branch curve.
      return {{"i", "ii"}, "C irreducible with an ordinary quadruple point at o, possibly one further node", true};
    case SurfaceType::II:
      return {{"iii"}, "C = C1 + C2, each nodal at p, C1 C2 = 4; D_B is disconnected", false};
    default:
      throw input_error("branch curve kind is defined only for types Ia, Ib and II");
  }
}

struct ModuliComponent {
  std::string name;
  long long dimension = 0;
  std::size_t cover_degree = 0;
  bool generically_smooth = true;
  bool irreducible = true;
  bool connected = true;
};

struct SurfaceReport {
  SurfaceType type = SurfaceType::Invalid;
  long long pg = 0, q = 0, K2 = 0, chi = 0;
  long long pencil_genus = 0;
  long long PhiZ = 0;
  bool canonical_fixed_part = false;
  std::string canonical_system;
  std::string R_relation;
  BranchKind branch;
  bool N_beta_trivial = true;
  long long h0_N_beta = 0;
  long long h1_TS = 0;
  ModuliComponent moduli;
  std::string K_ample;
  std::vector<std::string> notes;
};

inline constexpr long long kAbelianModuliDim = 3;  // (1,2)-polarized abelian surfaces

inline std::size_t cover_degree_of(SurfaceType t) {
  const auto rep = component_report();
  switch (t) {
    case SurfaceType::Ia: return rep.components.at(0).computed_degree;
    case SurfaceType::Ib: return rep.components.at(1).computed_degree;
    case SurfaceType::II: return rep.components.at(2).computed_degree;
    default: throw input_error("no moduli component for type " + to_string(t));
  }
}

inline SurfaceReport surface_report(const Character& q, const Character& root) {
  const auto cls = classify(q, root);
  if (cls.type == SurfaceType::PG3)
    throw input_error("the degenerate case Q = Q^(1/2) = O_A has p_g = q = 3 and lies outside this moduli space");
  if (cls.type == SurfaceType::Invalid) throw input_error("no surface: " + cls.reason);

  const auto lattice = make_lattice(2);
  const auto scenario = branch_scenarios().front();
  SurfaceReport r;
  r.type = cls.type;

  r.chi = scenario.inv.chi;
  r.K2 = scenario.inv.K2_minimal;
  // h0(L (x) Q^(1/2) (x) I_o): the pencil |L (x) Q^(1/2)| passes through o only when the root is trivial.
  const long long h0_pencil_through_o = root.is_trivial() ? 2 : 1;
  r.pg = 1 + h0_pencil_through_o;
  r.q = 1 + r.pg - r.chi;

  // The Albanese pencil is the preimage of the genus 3 pencil D on B; it is an
  // etale double cover, split exactly when Q^(1/2) restricts trivially to D.
  const long long gD = genus_blowup_divisor(kPencilClass);
  const bool splits = is_in_im_phi2(lattice, root);
  r.pencil_genus = splits ? gD : 2 * gD - 1;

  switch (cls.type) {
    case SurfaceType::Ia:
      r.PhiZ = 8;
      r.canonical_fixed_part = false;
      r.canonical_system = "|K_S| has no fixed part";
      r.R_relation = "2R in |Phi|";
      r.K_ample = "general surface has ample K";
      break;
    case SurfaceType::Ib:
      r.PhiZ = 4;
      r.canonical_fixed_part = true;
      r.canonical_system = "|K_S| = Z + |Phi|";
      r.R_relation = "R in |Phi|";
      r.K_ample = "general surface has ample K";
      break;
    default:
      r.PhiZ = 8;
      r.canonical_fixed_part = false;
      r.canonical_system = "|K_S| has no fixed part";
      r.R_relation = "R = R1 + R2, 4R_i in |Phi|";
      r.K_ample = "all surfaces have ample K";
      break;
  }
  r.branch = branch_curve_kind(cls.type);

  r.N_beta_trivial = cls.type != SurfaceType::II;
  r.h0_N_beta = r.N_beta_trivial ? 1 : 0;
  r.h1_TS = kAbelianModuliDim + r.h0_N_beta;

  const auto sys_dim = dim_L2_Q_I4(lattice, q);
  if (!sys_dim) throw consistency_error("branch linear system empty for a valid datum");
  r.moduli.name = "M_" + to_string(cls.type);
  r.moduli.dimension = kAbelianModuliDim + *sys_dim;
  r.moduli.cover_degree = cover_degree_of(cls.type);
  if (r.moduli.dimension != r.h1_TS)
    throw consistency_error("moduli dimension " + std::to_string(r.moduli.dimension) + " differs from h1(T_S) = " +
                            std::to_string(r.h1_TS) + " for type " + to_string(cls.type));
  if (r.chi != 1 - r.q + r.pg) throw consistency_error("chi = 1 - q + p_g fails");
  return r;
}

inline SurfaceReport surface_report(SurfaceType t) {
  if (t == SurfaceType::PG3 || t == SurfaceType::Invalid)
    throw input_error("surface_report is defined for types Ia, Ib and II; got " + to_string(t));
  auto [q, root] = representative_pair(t);
  return surface_report(q, root);
}

// Stand-in for the excluded case Q = Q^(1/2) = O_A.
inline SurfaceReport pg3_stub() {
  SurfaceReport r;
  r.type = SurfaceType::PG3;
  r.pg = 3;
  r.q = 3;
  r.K2 = 6;
  r.chi = 1;
  r.notes.push_back("Q = Q^(1/2) = O_A: p_g = q = 3, excluded from the moduli space");
  return r;
}

struct ModuliDecomposition {
  std::vector<ModuliComponent> components;
  std::map<std::string, std::size_t> pair_counts;  // by type, over all (Q, root) with Q in im phi_2
};

// All 64 pairs (Q, root) with Q in im phi_2.
inline std::vector<std::pair<Character, Character>> valid_pairs() {
  std::vector<std::pair<Character, Character>> out;
  for (const auto& q : im_phi2(make_lattice(2)))
    for (const auto& r : square_roots(q)) out.emplace_back(q, r);
  return out;
}

inline ModuliDecomposition moduli_decomposition() {
  ModuliDecomposition md;
  for (auto t : kSurfaceTypes) {
    const auto r = surface_report(t);
    if (r.moduli.dimension != kAbelianModuliDim + r.h0_N_beta)
      throw consistency_error("dimension of " + r.moduli.name + " is not 3 + h0(N_beta)");
    md.components.push_back(r.moduli);
  }
  for (const auto& [q, root] : valid_pairs()) ++md.pair_counts[to_string(classify(q, root).type)];
  for (const auto& c : md.components)
    if (md.pair_counts[c.name.substr(2)] != c.cover_degree)
      throw consistency_error(c.name + ": " + std::to_string(md.pair_counts[c.name.substr(2)]) +
                              " torsion data but cover degree " + std::to_string(c.cover_degree));
  if (md.components.size() != 3) throw consistency_error("expected three moduli components");
  return md;
}

template <class Json>
void to_json(Json& j, const ModuliComponent& c) {
  j = Json::object();
  j["name"] = c.name;
  j["dimension"] = c.dimension;
  j["cover_degree"] = c.cover_degree;
  j["generically_smooth"] = c.generically_smooth;
  j["irreducible"] = c.irreducible;
  j["connected"] = c.connected;
}

template <class Json>
void to_json(Json& j, const BranchKind& b) {
  j = Json::object();
  j["cases"] = b.cases;
  j["description"] = b.description;
  j["D_B_connected"] = b.D_B_connected;
}

template <class Json>
void to_json(Json& j, const SurfaceReport& r) {
  j = Json::object();
  j["type"] = to_string(r.type);
  j["pg"] = r.pg;
  j["q"] = r.q;
  j["K2"] = r.K2;
  j["chi"] = r.chi;
  if (r.type == SurfaceType::PG3) {
    j["notes"] = r.notes;
    return;
  }
  j["pencil_genus"] = r.pencil_genus;
  j["PhiZ"] = r.PhiZ;
  j["canonical_fixed_part"] = r.canonical_fixed_part;
  j["canonical_system"] = r.canonical_system;
  j["R_relation"] = r.R_relation;
  j["branch_kind"] = r.branch;
  j["N_beta"] = r.N_beta_trivial ? "trivial" : "nontrivial-2-torsion";
  j["h0_N_beta"] = r.h0_N_beta;
  j["h1_TS"] = r.h1_TS;
  j["moduli"] = r.moduli;
  j["K_ample"] = r.K_ample;
  j["notes"] = r.notes;
}

template <class Json>
void to_json(Json& j, const ModuliDecomposition& md) {
  j = Json::object();
  j["components"] = md.components;
  Json counts = Json::object();
  for (const auto& name : {"Ia", "Ib", "II", "PG3"}) {
    auto it = md.pair_counts.find(name);
    counts[name] = it == md.pair_counts.end() ? std::size_t{0} : it->second;
  }
  j["pair_counts"] = counts;
}

}  // namespace pgq2

#pragma once

// Command line front end. run() never calls exit(); it returns
//   0  success
//   2  bad input (unknown option, malformed matrix, root that does not square to Q, ...)
//   1  an internal cross-check failed

#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pgq2/chern.hpp"
#include "pgq2/classifier.hpp"
#include "pgq2/doublecover.hpp"
#include "pgq2/error.hpp"
#include "pgq2/lattice.hpp"
#include "pgq2/orbits.hpp"
#include "pgq2/paramodular.hpp"
#include "pgq2/rational.hpp"

namespace pgq2::cli {

using Json = nlohmann::ordered_json;

struct Options {
  std::string format = "json";
  int d = 2;
  std::size_t cap = kDefaultClosureCap;

  std::string set = "characters2";
  std::string generators = "paper6";
  std::string matrix;
  std::string character;
  int n = 2;
  std::string q;
  std::string root;
  std::string forest;
  long long rank = 2, a = 1, c2 = 1;
  std::vector<std::string> transforms;
  long long twist = 0;
  long long fat_point = 0;
  std::string blowup;
};

inline Vec4 parse_vec4(const std::string& text) {
  std::vector<long long> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw input_error("not an integer: \"" + item + "\" in \"" + text + "\"");
    }
  }
  if (v.size() != 4) throw input_error("expected 4 comma-separated integers, got \"" + text + "\"");
  return {v[0], v[1], v[2], v[3]};
}

// "chi1" / "psi7" (2-torsion, lifted when n = 4) or "e1,e2,e3,e4" mod n.
inline Character parse_character(const std::string& text, int n, const CharacterTable* table) {
  check_order_bound(n);
  if (table) {
    if (auto c = table->find(text)) return n == 4 ? c->lifted() : *c;
  }
  if (text.starts_with("chi") || text.starts_with("psi")) throw input_error("unknown character label " + text);
  return Character(n, parse_vec4(text));
}

inline std::string display_label(const Character& c, const CharacterTable* table) {
  if (table && c.n() == 2)
    if (auto l = table->label_of(c)) return pretty_label(*l);
  return "[" + exponent_string(c) + "]";
}

inline Json character_json(const Character& c, const CharacterTable* table) { return character_display(c, table); }

// ---------------------------------------------------------------------------

inline Json orbit_report(const Options& o) {
  const auto lattice = make_lattice(o.d);
  const CharacterTable table(lattice);
  std::vector<ParamodularMatrix> gens;
  if (o.generators == "paper6") gens = standard_generators();
  const std::span<const ParamodularMatrix> gspan(gens);

  Json j = Json::object();
  j["set"] = o.set;
  j["generators"] = Json::array();
  for (const auto& g : gens) j["generators"].push_back(g.name());

  auto emit = [&](const auto& set, const OrbitPartition& part) {
    Json orbits = Json::array();
    std::vector<std::size_t> sizes;
    for (const auto& block : part.blocks) {
      Json ob = Json::object();
      ob["size"] = block.size();
      Json members = Json::array();
      Json witnesses = Json::array();
      for (std::size_t i : block) {
        members.push_back(set.label(i));
        Json w = Json::array();
        for (std::size_t g : part.witnesses[i]) w.push_back(gens[g].name());
        witnesses.push_back(w);
      }
      ob["members"] = members;
      ob["witnesses"] = witnesses;
      orbits.push_back(ob);
      sizes.push_back(block.size());
    }
    j["orbits"] = orbits;
    j["sizes"] = sizes;
    j["transitive"] = part.blocks.size() == 1;
  };

  if (o.set == "characters2") {
    const auto set = characters2_set(table);
    emit(set, orbits_all(set, gspan, act_on_character));
  } else if (o.set == "psi12") {
    const auto set = psi_set(table);
    emit(set, orbits_all(set, gspan, act_on_character));
    std::vector<Permutation> perms;
    Json pj = Json::array();
    for (const auto& g : gens) {
      perms.push_back(permutation_of(g, set, act_on_character));
      Json e = Json::object();
      e["generator"] = g.name();
      e["cycles"] = perms.back().cycle_string(set.labels());
      pj.push_back(e);
    }
    j["permutations"] = pj;
    const auto cl = group_closure(perms, set.size(), o.cap);
    Json cj = Json::object();
    cj["order"] = cl.order;
    cj["truncated"] = cl.truncated;
    cj["transitive"] = cl.transitive;
    cj["orbit_sizes"] = cl.orbit_sizes();
    j["closure"] = cj;
  } else {
    const auto set = pairs_set(lattice, table);
    emit(set, orbits_all(set, gspan, act_on_pair));
  }
  return j;
}

inline Json membership_report(const Options& o) {
  const PolarizationType type(o.d);
  const auto m = parse_matrix(o.matrix);
  Json j = Json::object();
  j["d"] = o.d;
  j["entries"] = to_fraction_strings(m);
  j["certificate"] = is_member(m, type);
  return j;
}

inline Json act_report(const Options& o) {
  const PolarizationType type(o.d);
  const auto lattice = make_lattice(o.d);
  std::optional<CharacterTable> table;
  if (o.d == 2) table.emplace(lattice);
  const CharacterTable* tp = table ? &*table : nullptr;
  const auto m = ParamodularMatrix::from_entries(parse_matrix(o.matrix), type);
  const auto c = parse_character(o.character, o.n, tp);
  const auto image = act(m, c);
  Json j = Json::object();
  j["d"] = o.d;
  j["matrix"] = to_fraction_strings(m.entries());
  j["character"] = character_json(c, tp);
  j["image"] = character_json(image, tp);
  return j;
}

inline Json classify_report(const Options& o) {
  if (o.d != 2) throw input_error("classification is defined for d = 2 only");
  const CharacterTable table(make_lattice(2));
  const auto q = parse_character(o.q, 2, &table);
  const auto root = parse_character(o.root, 4, &table);
  const auto cls = classify(q, root);
  Json j = Json::object();
  j["Q"] = character_json(q, &table);
  j["root"] = character_json(root, &table);
  j["root_order"] = root.order();
  j["type"] = to_string(cls.type);
  j["reason"] = cls.reason;
  if (cls.type == SurfaceType::Invalid)
    j["report"] = nullptr;
  else if (cls.type == SurfaceType::PG3)
    j["report"] = pg3_stub();
  else
    j["report"] = surface_report(q, root);
  return j;
}

inline Json invariants_report(const Options& o) {
  const auto data = read_branch_data(o.forest);
  Json j = Json::object();
  j["L2"] = data.L2;
  j["forest"] = data.forest;
  j["invariants"] = invariants(data.L2, data.forest);
  return j;
}

inline Json chern_report(const Options& o) {
  Json j = Json::object();
  if (!o.blowup.empty()) {
    const auto comma = o.blowup.find(',');
    if (comma == std::string::npos) throw input_error("--blowup expects a,b");
    BlowupLineBundle D;
    try {
      D = {std::stoll(o.blowup.substr(0, comma)), std::stoll(o.blowup.substr(comma + 1))};
    } catch (const std::exception&) {
      throw input_error("--blowup expects two integers a,b, got " + o.blowup);
    }
    j["a"] = D.a;
    j["b"] = D.b;
    j["D2"] = self_intersection(D);
    j["DK"] = dot_canonical(D);
    j["chi"] = chi_blowup_line(D);
    j["arithmetic_genus"] = genus_blowup_divisor(D);
    return j;
  }
  ChernDatum v(o.rank, o.a, o.c2);
  j["input"] = v;
  Json steps = Json::array();
  for (const auto& t : o.transforms) {
    if (t == "sym2") v = sym2(v);
    else if (t == "sym3") v = sym3(v);
    else if (t == "dual") v = dual(v);
    else if (t == "det") v = det(v);
    else throw input_error("unknown transform " + t + " (sym2, sym3, dual, det)");
    Json s = Json::object();
    s["transform"] = t;
    s["datum"] = v;
    steps.push_back(s);
  }
  if (o.twist != 0) {
    v = tensor_line(v, o.twist);
    Json s = Json::object();
    s["transform"] = "L^" + std::to_string(o.twist);
    s["datum"] = v;
    steps.push_back(s);
  }
  j["steps"] = steps;
  j["result"] = v;
  j["fat_point"] = o.fat_point;
  j["chi"] = chi_with_fat_point(v, o.fat_point);
  return j;
}

inline Json moduli_report() {
  const auto rep = component_report();
  Json covers = Json::array();
  for (const auto& c : rep.components) {
    Json e = Json::object();
    e["name"] = c.name;
    e["description"] = c.description;
    e["degree"] = c.computed_degree;
    e["representative"] = c.representative;
    covers.push_back(e);
  }
  Json j = Json::object();
  j["decomposition"] = moduli_decomposition();
  j["covers"] = covers;
  j["pair_factorization"] = {rep.pair_factor_base, rep.pair_factor_roots};
  return j;
}

// ---------------------------------------------------------------------------
// Text rendering.

inline std::string pretty_in(std::string s) {
  // replace chiN / psiN tokens
  std::string out;
  for (std::size_t i = 0; i < s.size();) {
    if (s.compare(i, 3, "chi") == 0 || s.compare(i, 3, "psi") == 0) {
      std::size_t k = i + 3;
      while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
      if (k > i + 3) {
        out += pretty_label(s.substr(i, k - i));
        i = k;
        continue;
      }
    }
    out += s[i++];
  }
  return out;
}

inline void render_text(const Json& j, std::ostream& out, const std::string& indent = "") {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_object() || (v.is_array() && !v.empty() && (v.front().is_object() || v.front().is_array()))) {
        out << indent << k << ":\n";
        render_text(v, out, indent + "  ");
      } else {
        out << indent << k << ": ";
        render_text(v, out, "");
      }
    }
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (const auto& v : j) {
      out << indent << "-\n";
      render_text(v, out, indent + "  ");
    }
  } else if (j.is_array()) {
    std::string s;
    for (const auto& v : j) {
      if (!s.empty()) s += ' ';
      s += v.is_string() ? v.get<std::string>() : v.dump();
    }
    out << indent << (j.empty() ? "(none)" : pretty_in(s)) << "\n";
  } else {
    out << indent << (j.is_string() ? pretty_in(j.get<std::string>()) : j.dump()) << "\n";
  }
}

inline void render_orbits_text(const Json& j, std::ostream& out) {
  out << "set " << j["set"].get<std::string>() << ", " << j["generators"].size() << " generators\n";
  for (const auto& ob : j["orbits"]) {
    out << "  orbit of size " << ob["size"].get<std::size_t>() << ":";
    for (const auto& m : ob["members"]) out << ' ' << pretty_in(m.get<std::string>());
    out << "\n";
  }
  out << "transitive: " << (j["transitive"].get<bool>() ? "yes" : "no") << "\n";
  if (j.contains("permutations")) {
    for (const auto& p : j["permutations"])
      out << p["generator"].get<std::string>() << ": " << pretty_in(p["cycles"].get<std::string>()) << "\n";
    const auto& c = j["closure"];
    out << "T: order " << c["order"].get<std::size_t>() << (c["truncated"].get<bool>() ? " (truncated)" : "")
        << ", transitive " << (c["transitive"].get<bool>() ? "yes" : "no") << "\n";
  }
}

inline void emit(const Json& j, const Options& o, std::ostream& out, bool orbits = false) {
  if (o.format == "json") {
    out << j.dump(2) << "\n";
  } else if (orbits) {
    render_orbits_text(j, out);
  } else {
    render_text(j, out);
  }
}

// ---------------------------------------------------------------------------

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monodromy, Riemann-Roch and classification tools for surfaces with p_g = q = 2, K^2 = 6", "pgq2"};
  app.fallthrough();
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--d", o.d, "Polarization type (1,d)")->check(CLI::PositiveNumber);
  app.add_option("--cap", o.cap, "Element cap for group closure")->check(CLI::PositiveNumber);

  auto* orbits = app.add_subcommand("orbits", "[orbits module] orbit partition of a character set under the generators");
  orbits->add_option("--set", o.set, "characters2 | psi12 | pairs48")
      ->check(CLI::IsMember({"characters2", "psi12", "pairs48"}));
  orbits->add_option("--generators", o.generators, "paper6 | none")->check(CLI::IsMember({"paper6", "none"}));

  auto* membership = app.add_subcommand("membership", "[paramodular module] paramodular membership certificate");
  membership->add_option("--matrix", o.matrix, "16 comma-separated rationals, row-major")->required();

  auto* actc = app.add_subcommand("act", "[paramodular module] monodromy action of a matrix on a character");
  actc->add_option("--matrix", o.matrix, "16 comma-separated rationals, row-major")->required();
  actc->add_option("--char", o.character, "label (chi0..chi3, psi1..psi12) or e1,e2,e3,e4")->required();
  actc->add_option("--n", o.n, "order bound 2 or 4")->check(CLI::IsMember({2, 4}));

  auto* cls = app.add_subcommand("classify", "[classifier module] surface type and report for a torsion datum");
  cls->add_option("--Q", o.q, "2-torsion character: label or e1,e2,e3,e4")->required();
  cls->add_option("--root", o.root, "square root of Q as e1,e2,e3,e4 mod 4 (or a label)")->required();

  auto* inv = app.add_subcommand("invariants", "[doublecover module] canonical resolution invariants of a forest");
  inv->add_option("--forest", o.forest, "JSON file {\"L2\": n, \"nodes\": [...]}")->required();

  auto* chern = app.add_subcommand("chern", "[chern module] Euler characteristics from Chern data");
  chern->add_option("--rank", o.rank, "rank");
  chern->add_option("--a", o.a, "c1 = a L");
  chern->add_option("--c2", o.c2, "c2");
  chern->add_option("--transform", o.transforms, "sym2 | sym3 | dual | det, applied in order");
  chern->add_option("--twist", o.twist, "tensor with L^m after the transforms");
  chern->add_option("--fat-point", o.fat_point, "tensor with I_o^k");
  chern->add_option("--blowup", o.blowup, "a,b: the class a sigma^*L + b E on the blow-up");

  auto* moduli = app.add_subcommand("moduli", "[classifier module] moduli components and cover degrees");
  auto* ledger = app.add_subcommand("ledger", "[chern module] cohomology dimension ledger with replay checks");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*orbits) emit(orbit_report(o), o, out, true);
    else if (*membership) emit(membership_report(o), o, out);
    else if (*actc) emit(act_report(o), o, out);
    else if (*cls) emit(classify_report(o), o, out);
    else if (*inv) emit(invariants_report(o), o, out);
    else if (*chern) emit(chern_report(o), o, out);
    else if (*moduli) emit(moduli_report(), o, out);
    else if (*ledger) emit(Json(dimension_ledger()), o, out);
  } catch (const input_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const consistency_error& e) {
    err << "internal consistency failure: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace pgq2::cli

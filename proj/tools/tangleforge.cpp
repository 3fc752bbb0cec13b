#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "tangleforge/harness.hpp"
#include "tangleforge/io.hpp"

namespace tf = tangleforge;
using tf::io::json;

namespace {

constexpr int exit_failure = 1;
constexpr int exit_usage = 2;
constexpr int exit_cap = 3;

struct Options {
  std::string fixture;
  std::string graph;
  std::optional<int> k;
  std::uint64_t seed = 1;
  std::optional<int> cap_n;
  std::string format = "json";
  std::string out;
  std::string instance;
  std::string system;
  bool all = false;
  std::optional<int> suite;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Input {
  std::string name;
  tf::Graph graph;
  tf::Caps caps;
  std::optional<int> profile_k;
};

Input load_input(const Options& o) {
  if (!o.fixture.empty() && !o.graph.empty()) throw UsageError("give either --fixture or --graph, not both");
  Input in;
  if (!o.fixture.empty()) {
    const auto& f = tf::fixture(o.fixture);
    in = {f.name, f.graph, f.caps, f.profile_k};
  } else if (!o.graph.empty()) {
    in = {o.graph, tf::io::load_graph(o.graph), {}, std::nullopt};
  } else {
    throw UsageError("an input graph is required (--fixture or --graph)");
  }
  in.caps = tf::Caps::from_environment(in.caps);
  if (o.cap_n) in.caps.max_vertices = *o.cap_n;
  tf::detail::check_graph_caps(in.graph, in.caps);
  return in;
}

int profile_order(const Options& o, const Input& in) {
  if (o.k) return *o.k;
  if (in.profile_k) return *in.profile_k;
  throw UsageError("--k is required for graphs without a fixture default");
}

std::vector<tf::Profile> load_profiles(const Options& o, const Input& in) {
  return tf::maximal_regular_robust_profiles(in.graph, profile_order(o, in), in.caps);
}

json profiles_json(const Input& in, const std::vector<tf::Profile>& ps) {
  json out = json::array();
  const auto universe = tf::all_separations(in.graph, in.caps);
  for (const auto& p : ps) out.push_back(tf::io::to_json(p, tf::profile_flags(in.graph, p, universe)));
  return out;
}

json sets_json(const std::vector<tf::VertexSet>& xs) {
  json out = json::array();
  for (auto x : xs) out.push_back(tf::io::to_json(x));
  return out;
}

template <class Seps>
json separations_json(const Seps& seps) {
  json out = json::array();
  for (const auto& s : seps) out.push_back(tf::io::to_json(s));
  return out;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw UsageError("cannot write '" + o.out + "'");
  f << text;
}

void emit(const Options& o, const json& j) { emit(o, j.dump(2) + "\n"); }

void require_json(const Options& o) {
  if (o.format != "json") throw UsageError("--format dot is only available for treedec and totd");
}

int run_separations(const Options& o) {
  require_json(o);
  const auto in = load_input(o);
  const int k = o.k.value_or(in.graph.order() + 1);
  const auto seps = tf::enumerate_separations(in.graph, k, in.caps);
  emit(o, json{{"graph", tf::io::to_json(in.graph)}, {"k", k}, {"count", seps.size()}, {"separations", separations_json(seps)}});
  return 0;
}

int run_profiles(const Options& o) {
  require_json(o);
  const auto in = load_input(o);
  const int k = profile_order(o, in);
  const auto universe = tf::all_separations(in.graph, in.caps);
  json list = json::array();
  int counts[4] = {0, 0, 0, 0};
  for (const auto& p : tf::enumerate_k_profiles(in.graph, k, in.caps)) {
    const auto fl = tf::profile_flags(in.graph, p, universe);
    json j = tf::io::to_json(p, fl);
    if (!fl.regular) {
      const auto c = tf::classify_irregular(in.graph, p, in.caps);
      j["irregular"] = c.kind == tf::IrregularProfile::Kind::whole_graph ? json{{"kind", "whole_graph"}}
                                                                         : json{{"kind", "vertex"}, {"vertex", c.vertex}};
    }
    ++counts[0];
    counts[1] += fl.regular;
    counts[2] += fl.regular && fl.robust;
    counts[3] += fl.regular && fl.robust && fl.principal;
    list.push_back(std::move(j));
  }
  emit(o, json{{"graph", tf::io::to_json(in.graph)},
               {"k", k},
               {"census", {{"profiles", counts[0]}, {"regular", counts[1]}, {"regular_robust", counts[2]}, {"regular_robust_principal", counts[3]}}},
               {"profiles", list}});
  return 0;
}

int run_distinguish(const Options& o) {
  require_json(o);
  const auto in = load_input(o);
  const auto ps = load_profiles(o, in);
  json pairs = json::array();
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      const auto d = tf::efficient_distinguishers(ps[i], ps[j]);
      json seps = json::array();
      for (const auto& s : d.separations) seps.push_back(tf::io::to_json(tf::oriented_towards(ps[i], ps[j], s.canonical())));
      pairs.push_back({{"p", i}, {"q", j}, {"order", d.order}, {"separations", seps}});
    }
  emit(o, json{{"graph", tf::io::to_json(in.graph)}, {"profiles", profiles_json(in, ps)}, {"pairs", pairs}});
  return 0;
}

tf::Separation separation_from_json(const json& j) {
  return {tf::VertexSet::from(j.at("a").get<std::vector<int>>()), tf::VertexSet::from(j.at("b").get<std::vector<int>>())};
}

int run_splinter(const Options& o) {
  require_json(o);
  tf::FiniteSplinterFamily<tf::GraphUniverse> fam{tf::GraphUniverse{}, {}};
  tf::Graph g;
  if (!o.instance.empty()) {
    try {
      std::istringstream ss(tf::io::slurp(o.instance));
      const json j = tf::io::read_json(ss);
      g = tf::io::graph_from_json(j.at("graph"));
      for (const auto& f : j.at("families")) {
        std::vector<tf::Separation> xs;
        for (const auto& s : f) {
          xs.push_back(separation_from_json(s));
          if (!tf::is_separation(g, xs.back())) throw tf::PreconditionError("family member is not a separation of the graph");
        }
        fam.families.push_back(std::move(xs));
      }
    } catch (const json::exception& e) {
      throw tf::ParseError(std::string("instance: ") + e.what());
    }
  } else {
    std::mt19937_64 rng(o.seed);
    fam = tf::harness::random_splinter_instance(rng);
  }
  const auto check = tf::splinters_check(fam);
  if (!check.ok()) {
    const auto& v = *check.violation;
    throw tf::HypothesisError("families " + std::to_string(v.i) + " and " + std::to_string(v.j) + " violate the splinter condition");
  }
  json families = json::array();
  for (const auto& f : fam.families) families.push_back(separations_json(f));
  emit(o, json{{"seed", o.instance.empty() ? json(o.seed) : json(nullptr)},
               {"families", families},
               {"transversal", separations_json(tf::splinter_finite(fam))}});
  return 0;
}

json check_json(const tf::ThinCheckReport& rep) {
  json viol = json::array();
  for (const auto& v : rep.violations)
    viol.push_back({{"property", v.property}, {"family_i", v.family_i}, {"family_j", v.family_j}, {"a", v.a}, {"b", v.b}});
  json maxc = json::array();
  for (auto [k, n] : rep.max_crossing) maxc.push_back({{"k", k}, {"max_crossing", n}});
  return {{"ok", rep.ok()}, {"violations", viol}, {"max_crossing", maxc}, {"oracle_mismatches", rep.oracle_mismatches.size()}};
}

int run_thin_splinter(const Options& o) {
  require_json(o);
  if (!o.instance.empty()) {
    std::istringstream ss(tf::io::slurp(o.instance));
    const auto inst = tf::io::instance_from_json(tf::io::read_json(ss));
    const auto rep = tf::thinly_splinters_check(inst);
    if (!rep.ok()) throw tf::HypothesisError("instance does not thinly splinter: property " + std::to_string(rep.violations.front().property));
    emit(o, json{{"instance", tf::io::to_json(inst)}, {"check", check_json(rep)}, {"result", tf::io::to_json(tf::thin_splinter(inst))}});
    return 0;
  }
  const auto in = load_input(o);
  const auto cs = tf::canonical_nested_separators(in.graph, load_profiles(o, in), in.caps);
  emit(o, json{{"elements", sets_json(cs.instance.elements)},
               {"instance", tf::io::to_json(cs.instance.splinter)},
               {"check", check_json(cs.check)},
               {"result", tf::io::to_json(cs.thin)}});
  return 0;
}

int run_profinite(const Options& o) {
  require_json(o);
  tf::io::ProfiniteInput pin;
  if (!o.system.empty()) {
    std::istringstream ss(tf::io::slurp(o.system));
    pin = tf::io::profinite_from_json(tf::io::read_json(ss), tf::Caps::from_environment());
  } else {
    std::mt19937_64 rng(o.seed);
    auto c = tf::harness::random_profinite_case(rng);
    pin.system = std::move(c.restriction.system);
    pin.labels = std::move(c.restriction.labels);
    pin.families = std::move(c.families);
  }
  const auto res = tf::profinite_splinter(pin.system, pin.families, tf::Caps::from_environment());
  json chosen = json::array();
  for (std::size_t p = 0; p < res.chosen.size(); ++p) {
    json at = json::array();
    for (auto x : res.chosen[p]) at.push_back(pin.labels.empty() ? json(x) : tf::io::to_json(pin.labels[p][x]));
    chosen.push_back(at);
  }
  emit(o, json{{"seed", o.system.empty() ? json(o.seed) : json(nullptr)},
               {"points", pin.system.poset.size()},
               {"chosen", chosen},
               {"threads", res.nested},
               {"candidate_sizes", res.candidate_sizes},
               {"profintersect", res.profintersect}});
  return 0;
}

int run_nested_separators(const Options& o) {
  require_json(o);
  const auto in = load_input(o);
  const auto cs = tf::canonical_nested_separators(in.graph, load_profiles(o, in), in.caps);
  json levels = json::array();
  for (const auto& l : cs.thin.levels) {
    std::vector<tf::VertexSet> added;
    for (auto x : l.added) added.push_back(cs.instance.elements[x]);
    levels.push_back({{"k", l.k}, {"added", sets_json(added)}});
  }
  emit(o, json{{"graph", tf::io::to_json(in.graph)},
               {"profiles", profiles_json(in, cs.instance.profiles)},
               {"separators", sets_json(cs.separators)},
               {"levels", levels}});
  return 0;
}

tf::NestedSeparations nested_separations_for(const Input& in, const std::vector<tf::Profile>& ps) {
  const auto cs = tf::canonical_nested_separators(in.graph, ps, in.caps);
  return tf::separators_to_separations(in.graph, cs.separators, ps);
}

int run_nested_separations(const Options& o) {
  require_json(o);
  const auto in = load_input(o);
  const auto ps = load_profiles(o, in);
  const auto ns = nested_separations_for(in, ps);
  json steps = json::array();
  for (const auto& s : ns.steps)
    steps.push_back({{"separator", tf::io::to_json(s.separator)},
                     {"tight", sets_json(s.tight)},
                     {"non_tight", sets_json(s.non_tight)},
                     {"grouped", sets_json(s.grouped)},
                     {"emitted", separations_json(s.emitted)}});
  emit(o, json{{"graph", tf::io::to_json(in.graph)}, {"separations", separations_json(ns.separations)}, {"steps", steps}});
  return 0;
}

int run_treedec(const Options& o) {
  const auto in = load_input(o);
  const auto ns = nested_separations_for(in, load_profiles(o, in));
  const auto td = tf::treeset_to_treedecomposition(in.graph, ns.separations);
  if (o.format == "dot") {
    emit(o, tf::io::to_dot(td));
    return 0;
  }
  emit(o, json{{"graph", tf::io::to_json(in.graph)}, {"separations", separations_json(ns.separations)}, {"decomposition", tf::io::to_json(td)}});
  return 0;
}

int run_totd(const Options& o) {
  const auto in = load_input(o);
  const auto ps = load_profiles(o, in);
  const auto t = tf::build_totd(in.graph, ps, in.caps);
  const auto rep = tf::certify_totd(in.graph, t, ps);
  if (!rep.ok()) throw tf::CertificationError("tree of tree-decompositions fails certification: " + rep.failures.front());
  if (o.format == "dot") {
    emit(o, tf::io::to_dot(t));
    return 0;
  }
  emit(o, json{{"graph", tf::io::to_json(in.graph)},
               {"separators", sets_json(t.separators)},
               {"closure", sets_json(t.closure)},
               {"tree", tf::io::to_json(t)},
               {"certificate", {{"ok", rep.ok()}, {"failures", rep.failures}}}});
  return 0;
}

int run_verify(const Options& o) {
  auto suites = tf::harness::invariant_suites(o.seed);
  if (o.suite && !o.all) {
    if (*o.suite < 1 || *o.suite > static_cast<int>(suites.size())) throw UsageError("--suite must lie in 1.." + std::to_string(suites.size()));
    suites = {suites[*o.suite - 1]};
  }
  json results = json::array();
  std::ostringstream text;
  bool ok = true;
  for (const auto& s : suites) {
    const auto r = s();
    ok = ok && r.passed;
    text << (r.passed ? "PASS " : "FAIL ") << r.name << " | " << r.detail << '\n';
    results.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
  }
  if (!ok) text << "seed " << o.seed << '\n';
  if (o.format == "json") emit(o, json{{"seed", o.seed}, {"passed", ok}, {"suites", results}});
  else throw UsageError("verify supports --format json only");
  std::cerr << text.str();
  return ok ? 0 : exit_failure;
}

int run_fixtures(const Options& o) {
  require_json(o);
  json list = json::array();
  for (const auto& f : tf::fixtures()) {
    json census = json::array();
    for (std::size_t k = 0; k < f.census.size(); ++k)
      census.push_back({{"k", k + 1}, {"profiles", f.census[k][0]}, {"regular", f.census[k][1]}, {"regular_robust", f.census[k][2]},
                        {"regular_robust_principal", f.census[k][3]}});
    list.push_back({{"name", "FIX_" + f.name}, {"graph", tf::io::to_json(f.graph)}, {"profile_k", f.profile_k}, {"census", census}});
  }
  emit(o, json{{"fixtures", list}});
  return 0;
}

void diagnostic(const std::string& kind, const std::string& message) {
  std::cout << json{{"error", kind}, {"message", message}}.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Profiles, canonical nested separators and trees of tree-decompositions on small graphs"};
  app.require_subcommand(1);
  Options o;
  const std::vector<std::pair<std::string, int (*)(const Options&)>> verbs{
      {"separations", run_separations},
      {"profiles", run_profiles},
      {"distinguish", run_distinguish},
      {"splinter", run_splinter},
      {"thin-splinter", run_thin_splinter},
      {"profinite-splinter", run_profinite},
      {"nested-separators", run_nested_separators},
      {"nested-separations", run_nested_separations},
      {"treedec", run_treedec},
      {"totd", run_totd},
      {"verify", run_verify},
      {"fixtures", run_fixtures},
  };
  const std::map<std::string, std::string> help{
      {"separations", "list S_k"},
      {"profiles", "enumerate k-profiles with flags"},
      {"distinguish", "efficient distinguishers of the profile set"},
      {"splinter", "nested transversal of splintering families (--instance or --seed)"},
      {"thin-splinter", "canonical nested set of a thinly splintering instance"},
      {"profinite-splinter", "nested set in the limit of an inverse system (--system or --seed)"},
      {"nested-separators", "canonical nested separators of the profile set"},
      {"nested-separations", "nested separations realising the canonical separators"},
      {"treedec", "tree-decomposition from the nested separations"},
      {"totd", "tree of tree-decompositions"},
      {"verify", "replay the invariant suites"},
      {"fixtures", "list built-in fixtures"},
  };
  std::map<CLI::App*, int (*)(const Options&)> handlers;
  for (const auto& [name, fn] : verbs) {
    auto* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("--fixture", o.fixture, "built-in fixture (P4, C4, 2K4, GRID33, 2K2, HUB6; FIX_ prefix allowed)");
    sub->add_option("--graph", o.graph, "edge list or JSON graph file");
    sub->add_option("--k", o.k, "order bound")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--cap-n", o.cap_n, "vertex cap")->check(CLI::PositiveNumber);
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "dot"}));
    sub->add_option("--out", o.out, "output file");
    if (name == "splinter" || name == "thin-splinter") sub->add_option("--instance", o.instance, "instance JSON file");
    if (name == "profinite-splinter") sub->add_option("--system", o.system, "inverse system JSON file");
    if (name == "verify") {
      sub->add_flag("--all", o.all, "run every suite");
      sub->add_option("--suite", o.suite, "run one suite by number");
    }
    handlers[sub] = fn;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_usage;
  }
  try {
    for (auto* sub : app.get_subcommands()) return handlers.at(sub)(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const tf::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const tf::PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const tf::SizeLimitError& e) {
    std::cerr << "cap exceeded: " << e.what() << '\n';
    return exit_cap;
  } catch (const tf::HypothesisError& e) {
    diagnostic("hypothesis", e.what());
    return exit_failure;
  } catch (const tf::CertificationError& e) {
    diagnostic("certification", e.what());
    return exit_failure;
  }
  return exit_usage;
}

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include <bratteli/error.hpp>
#include <bratteli/io.hpp>

#include "manifest.hpp"

using namespace bratteli;
using bratteli::cli::Manifest;

namespace {

struct Globals {
  std::string out;
  bool pretty = false;
  int threads = 1;
};

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw Error("InvalidCuts", {{"token", tok}});
    }
  }
  return out;
}

// "a:b,b:c" -> map of labels at level 1.
Sigma parse_sigma(const Diagram& d, const std::string& s) {
  Sigma sigma;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    const auto colon = tok.find(':');
    if (colon == std::string::npos) throw Error("ParseError", {{"sigma", tok}});
    const int a = d.index_of(1, tok.substr(0, colon));
    const int b = d.index_of(1, tok.substr(colon + 1));
    if (a < 0 || b < 0) throw Error("ParseError", {{"sigma", tok}, {"reason", "unknown label"}});
    sigma[a] = b;
  }
  return sigma;
}

Rational parse_rational(const std::string& s) {
  try {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw Error("ParseError", {{"rational", s}});
  }
}

// "a:acbda,b:bdcbdacb" or a JSON file holding {"substitution": {...}} or a bare map.
Json parse_substitution(const std::string& arg) {
  std::ifstream probe(arg);
  if (probe) {
    Json j = read_json_file(arg);
    return j.contains("substitution") ? j.at("substitution") : j;
  }
  Json m = Json::object();
  std::stringstream in(arg);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    const auto colon = tok.find(':');
    if (colon == std::string::npos) throw Error("ParseError", {{"substitution", tok}});
    m[tok.substr(0, colon)] = tok.substr(colon + 1);
  }
  return m;
}

Diagram diagram_of_substitution(const Json& sub, int depth) {
  RawDiagram raw;
  std::vector<std::string> labels;
  for (auto it = sub.begin(); it != sub.end(); ++it) labels.push_back(it.key());
  raw.labels = {labels};
  Matrix f(labels.size(), labels.size());
  for (std::size_t v = 0; v < labels.size(); ++v)
    for (char c : sub.at(labels[v]).get<std::string>()) {
      const auto pos = std::find(labels.begin(), labels.end(), std::string(1, c));
      if (pos == labels.end()) throw Error("ParseError", {{"letter", std::string(1, c)}});
      f(v, pos - labels.begin()) += 1;
    }
  raw.matrices = {f};
  raw.top_row.assign(labels.size(), 1);
  raw.depth = depth;
  return validate(std::move(raw));
}

Ordering load_any_ordering(const Diagram& d, const std::string& path, Manifest& m) {
  m.input(path);
  return load_ordering(d, path);
}

Diagram load_input_diagram(const std::string& path, Manifest& m) {
  m.input(path);
  return load_diagram(path);
}

void render(std::ostream& os, const Json& j, const std::string& prefix) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (prefix.empty() && it.key() == "manifest") continue;
      render(os, it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
    }
    return;
  }
  if (j.is_array() && !j.empty() && (j.front().is_object() || j.size() > 16)) {
    for (std::size_t i = 0; i < j.size(); ++i) render(os, j[i], prefix + "[" + std::to_string(i) + "]");
    return;
  }
  os << std::left << std::setw(40) << prefix << ' ' << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
}

void emit(const Globals& g, Json report, const Manifest& m) {
  report["manifest"] = m.to_json();
  std::ostringstream text;
  if (g.pretty) {
    render(text, report, "");
    text << "command: " << report["manifest"]["command"].get<std::string>() << '\n';
  } else {
    text << report.dump(2) << '\n';
  }
  if (g.out.empty()) {
    std::cout << text.str();
  } else {
    std::ofstream f(g.out);
    if (!f) throw Error("ParseError", {{"path", g.out}, {"reason", "cannot write"}});
    f << text.str();
  }
}

using Action = std::function<void()>;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orderings, perfection and random orderings on finite-rank Bratteli diagrams", "bratteli"};
  app.set_version_flag("--version", BRATTELI_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("-o,--output", g.out, "Write the report here instead of stdout");
  app.add_flag("--pretty", g.pretty, "Human-readable table instead of JSON");
  app.add_option("--threads", g.threads, "Worker threads (BRATTELI_THREADS overrides)")->check(CLI::PositiveNumber);

  Action action;
  std::string diagram_path, ordering_path, skeleton_path;
  std::string cuts, uniform, sigma_arg, levels_arg, epsilon = "1/10", substitution;
  std::string ordering_out, dot_out, emit_diagram;
  int n = 0, depth = 0, horizon = 12, window = 5, k = 1, j = 1, q = 1, towers = 8, max_len = 2;
  long long samples = 2000;
  std::uint64_t seed = 1;
  bool exact_only = false;

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "Check a diagram file");
  validate_cmd->add_option("diagram", diagram_path)->required();
  validate_cmd->callback([&] {
    action = [&] {
      Manifest m("validate");
      const Diagram d = load_input_diagram(diagram_path, m);
      Json r;
      r["valid"] = true;
      r["mode"] = to_string(d.mode());
      r["depth"] = d.depth();
      r["period"] = d.period();
      r["rank"] = d.strict_rank() ? Json(d.rank()) : Json(nullptr);
      Json sizes = Json::array();
      for (int level = 1; level <= std::min(d.depth(), 64); ++level) sizes.push_back(d.size(level));
      r["levelSizes"] = sizes;
      emit(g, r, m);
    };
  });

  // telescope
  auto* tele_cmd = app.add_subcommand("telescope", "Telescope a diagram (and optionally an ordering)");
  tele_cmd->add_option("diagram", diagram_path)->required();
  auto* cuts_opt = tele_cmd->add_option("--cuts", cuts, "Cut levels, starting at 0");
  tele_cmd->add_option("--uniform", uniform, "first,step: keep repeating schedules repeating")->excludes(cuts_opt);
  tele_cmd->add_option("--ordering", ordering_path, "Ordering to carry along as its lexicographic image");
  tele_cmd->add_option("--ordering-out", ordering_out, "Where to write the telescoped ordering");
  tele_cmd->callback([&] {
    action = [&] {
      Manifest m("telescope");
      const Diagram d = load_input_diagram(diagram_path, m);
      std::optional<Ordering> w;
      if (!ordering_path.empty()) w = load_any_ordering(d, ordering_path, m);
      Diagram t;
      std::optional<Ordering> tw;
      if (!uniform.empty()) {
        const auto fs = parse_ints(uniform);
        if (fs.size() != 2) throw Error("InvalidCuts", {{"uniform", uniform}});
        m.param("uniform", fs);
        if (w) std::tie(t, tw) = lexicographic_image_uniform(d, *w, fs[0], fs[1]);
        else t = telescope_uniform(d, fs[0], fs[1]);
      } else {
        const auto cs = parse_ints(cuts);
        m.param("cuts", cs);
        if (w) std::tie(t, tw) = lexicographic_image(d, *w, cs);
        else t = telescope(d, cs);
      }
      if (tw && !ordering_out.empty()) {
        Json o = ordering_to_json(t, *tw);
        o["manifest"] = m.to_json();
        write_json_file(ordering_out, o);
      }
      emit(g, diagram_to_json(t), m);
    };
  });

  // heights
  auto* heights_cmd = app.add_subcommand("heights", "Number of root paths into each vertex of a level");
  heights_cmd->add_option("diagram", diagram_path)->required();
  heights_cmd->add_option("-n,--level", n, "Level")->required();
  heights_cmd->callback([&] {
    action = [&] {
      Manifest m("heights");
      m.param("level", n);
      const Diagram d = load_input_diagram(diagram_path, m);
      Json h = Json::object();
      const auto hs = heights(d, n);
      for (std::size_t v = 0; v < hs.size(); ++v) h[d.labels(n)[v]] = big_to_json(hs[v]);
      emit(g, {{"level", n}, {"heights", h}}, m);
    };
  });

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "Rank, simplicity and block structure up to a depth");
  classify_cmd->add_option("diagram", diagram_path)->required();
  classify_cmd->add_option("--depth", depth, "Probe depth")->required();
  classify_cmd->callback([&] {
    action = [&] {
      Manifest m("classify");
      m.param("depth", depth);
      const Diagram d = load_input_diagram(diagram_path, m);
      emit(g, to_json(d, classify(d, depth)), m);
    };
  });

  // order
  auto* order_cmd = app.add_subcommand("order", "Build or inspect orderings");
  order_cmd->require_subcommand(1);
  auto* order_random = order_cmd->add_subcommand("random", "Uniformly random ordering");
  order_random->add_option("diagram", diagram_path)->required();
  order_random->add_option("--seed", seed);
  order_random->add_option("--depth", depth)->required();
  order_random->callback([&] {
    action = [&] {
      Manifest m("order random");
      m.seed(seed);
      m.param("depth", depth);
      const Diagram d = load_input_diagram(diagram_path, m);
      emit(g, ordering_to_json(d, random_ordering(d, seed, depth)), m);
    };
  });
  auto* order_natural = order_cmd->add_subcommand("natural", "Letters in label order");
  order_natural->add_option("diagram", diagram_path)->required();
  order_natural->callback([&] {
    action = [&] {
      Manifest m("order natural");
      const Diagram d = load_input_diagram(diagram_path, m);
      emit(g, ordering_to_json(d, natural_ordering(d)), m);
    };
  });
  auto* order_from = order_cmd->add_subcommand("from", "Check and normalize an ordering file");
  order_from->add_option("diagram", diagram_path)->required();
  order_from->add_option("ordering", ordering_path)->required();
  order_from->callback([&] {
    action = [&] {
      Manifest m("order from");
      const Diagram d = load_input_diagram(diagram_path, m);
      emit(g, ordering_to_json(d, load_any_ordering(d, ordering_path, m)), m);
    };
  });
  auto* order_sub = order_cmd->add_subcommand("substitution", "Stationary ordering read off a substitution");
  order_sub->add_option("map", substitution, "a:acbda,b:... or a JSON file")->required();
  order_sub->add_option("--diagram", diagram_path, "Check against this diagram instead of deriving one");
  order_sub->add_option("--emit-diagram", emit_diagram, "Write the derived diagram here");
  order_sub->add_option("--depth", depth, "Depth of the derived diagram");
  order_sub->callback([&] {
    action = [&] {
      Manifest m("order substitution");
      const Json sub = parse_substitution(substitution);
      m.param("substitution", sub);
      const Diagram d = diagram_path.empty() ? diagram_of_substitution(sub, depth > 0 ? depth : 12)
                                             : load_input_diagram(diagram_path, m);
      const Ordering w = ordering_from_json(d, Json{{"substitution", sub}});
      if (!emit_diagram.empty()) {
        Json dj = diagram_to_json(d);
        dj["manifest"] = m.to_json();
        write_json_file(emit_diagram, dj);
      }
      emit(g, ordering_to_json(d, w), m);
    };
  });
  auto* order_extremal = order_cmd->add_subcommand("extremal", "Maximal and minimal paths up to a depth");
  order_extremal->add_option("diagram", diagram_path)->required();
  order_extremal->add_option("ordering", ordering_path)->required();
  order_extremal->add_option("--depth", depth)->required();
  order_extremal->add_option("--window", window);
  order_extremal->callback([&] {
    action = [&] {
      Manifest m("order extremal");
      m.param("depth", depth);
      m.param("window", window);
      const Diagram d = load_input_diagram(diagram_path, m);
      const Ordering w = load_any_ordering(d, ordering_path, m);
      emit(g, to_json(d, extremal_paths(d, w, depth, window)), m);
    };
  });
  auto* order_language = order_cmd->add_subcommand("language", "Short words of the language");
  order_language->add_option("diagram", diagram_path)->required();
  order_language->add_option("ordering", ordering_path)->required();
  order_language->add_option("--length", max_len, "Longest word");
  order_language->add_option("--horizon", horizon);
  order_language->add_flag("--exact", exact_only, "Fixed-point scan (repeating inputs only)");
  order_language->callback([&] {
    action = [&] {
      Manifest m("order language");
      m.param("length", max_len);
      m.param("horizon", horizon);
      m.param("exact", exact_only);
      const Diagram d = load_input_diagram(diagram_path, m);
      const Ordering w = load_any_ordering(d, ordering_path, m);
      if (exact_only) emit(g, to_json(d, exact_language(d, w, max_len)), m);
      else emit(g, to_json(d, language_sample(d, w, max_len, default_window(horizon))), m);
    };
  });

  // check-perfect
  bool no_telescope = false;
  auto* perfect_cmd = app.add_subcommand("check-perfect", "Decide whether the ordering is perfect");
  perfect_cmd->add_option("diagram", diagram_path)->required();
  perfect_cmd->add_option("ordering", ordering_path)->required();
  perfect_cmd->add_option("--horizon", horizon);
  perfect_cmd->add_flag("--no-telescope", no_telescope, "Require the input to be well telescoped already");
  perfect_cmd->callback([&] {
    action = [&] {
      Manifest m("check-perfect");
      m.param("horizon", horizon);
      const Diagram d = load_input_diagram(diagram_path, m);
      const Ordering w = load_any_ordering(d, ordering_path, m);
      emit(g, to_json(d, no_telescope ? check_perfect(d, w, horizon) : analyze_perfection(d, w, horizon)), m);
    };
  });

  // skeleton
  auto* skeleton_cmd = app.add_subcommand("skeleton", "Skeletons and associated graphs");
  skeleton_cmd->require_subcommand(1);
  auto* sk_extract = skeleton_cmd->add_subcommand("extract", "Skeleton of a perfect ordering");
  sk_extract->add_option("diagram", diagram_path)->required();
  sk_extract->add_option("ordering", ordering_path)->required();
  sk_extract->add_option("--horizon", horizon);
  sk_extract->callback([&] {
    action = [&] {
      Manifest m("skeleton extract");
      m.param("horizon", horizon);
      const Diagram d = load_input_diagram(diagram_path, m);
      const Ordering w = load_any_ordering(d, ordering_path, m);
      const WellTelescoped wt = well_telescope(d, w, horizon);
      const PerfectionVerdict v = check_perfect(wt.diagram, wt.ordering, horizon);
      if (v.status != Status::Perfect) throw Error("NotPerfect", {{"status", to_string(v.status)}});
      const Skeleton sk = skeleton_of(wt.diagram, wt.ordering, horizon);
      Json r = skeleton_to_json(wt.diagram, sk, v.sigma);
      r["telescoping"] = {{"first", wt.first}, {"step", wt.step}};
      emit(g, r, m);
    };
  });
  auto* sk_graph = skeleton_cmd->add_subcommand("graph", "Associated graph, balance and crossing data");
  sk_graph->add_option("diagram", diagram_path)->required();
  sk_graph->add_option("skeleton", skeleton_path)->required();
  sk_graph->add_option("--dot", dot_out, "Write the graph in DOT format");
  sk_graph->add_option("--level", n, "Matrix level used for balance data");
  sk_graph->callback([&] {
    action = [&] {
      Manifest m("skeleton graph");
      const Diagram d = load_input_diagram(diagram_path, m);
      m.input(skeleton_path);
      const auto [sk, sigma] = skeleton_from_json(d, read_json_file(skeleton_path));
      const AssociatedGraph gr = associated_graph(sk, sigma);
      const int level = n > 0 ? n : 1;
      m.param("level", level);
      Json r = to_json(d, gr);
      r["balance"] = to_json(d, balance_check(d, sk, sigma, level));
      const auto pos = positively_strongly_connected(d.matrix(level), sk, gr);
      Json rows = Json::object();
      for (std::size_t u = 0; u < sk.size(); ++u) {
        Json cross = Json::array();
        for (const auto& c : crossing_numbers(d.matrix(level), sk, gr, static_cast<int>(u))) cross.push_back(big_to_json(c));
        rows[d.labels(1)[u]] = {{"crossingNumbers", cross}, {"positivelyStronglyConnected", static_cast<bool>(pos[u])}};
      }
      r["rows"] = rows;
      if (!dot_out.empty()) {
        std::ofstream f(dot_out);
        if (!f) throw Error("ParseError", {{"path", dot_out}, {"reason", "cannot write"}});
        f << to_dot(gr, d.labels(1));
      }
      emit(g, r, m);
    };
  });
  auto* sk_enum = skeleton_cmd->add_subcommand("enumerate", "All skeletons with k extremal pairs");
  sk_enum->add_option("diagram", diagram_path)->required();
  sk_enum->add_option("-k", k)->required();
  sk_enum->callback([&] {
    action = [&] {
      Manifest m("skeleton enumerate");
      m.param("k", k);
      const Diagram d = load_input_diagram(diagram_path, m);
      emit(g, to_json(d, enumerate_skeletons(d, k)), m);
    };
  });

  // synthesize
  auto* synth_cmd = app.add_subcommand("synthesize", "Perfect ordering realizing a skeleton");
  synth_cmd->add_option("diagram", diagram_path)->required();
  synth_cmd->add_option("skeleton", skeleton_path)->required();
  synth_cmd->add_option("--horizon", horizon);
  synth_cmd->callback([&] {
    action = [&] {
      Manifest m("synthesize");
      m.param("horizon", horizon);
      const Diagram d = load_input_diagram(diagram_path, m);
      m.input(skeleton_path);
      const auto [sk, sigma] = skeleton_from_json(d, read_json_file(skeleton_path));
      emit(g, ordering_to_json(d, synthesize_order(d, sk, sigma, horizon)), m);
    };
  });

  // odometer
  auto* odo_cmd = app.add_subcommand("odometer", "Extremal-path odometer constructions");
  odo_cmd->require_subcommand(1);
  auto* odo_construct = odo_cmd->add_subcommand("construct", "Ordering with one extremal pair per vertex");
  odo_construct->add_option("diagram", diagram_path)->required();
  odo_construct->add_option("--sigma", sigma_arg, "a:b,b:c,... (default: label order, cyclically)");
  odo_construct->callback([&] {
    action = [&] {
      Manifest m("odometer construct");
      const Diagram d = load_input_diagram(diagram_path, m);
      Sigma sigma;
      if (sigma_arg.empty()) {
        const int r = static_cast<int>(d.size(1));
        for (int i = 0; i < r; ++i) sigma[i] = (i + 1) % r;
      } else {
        sigma = parse_sigma(d, sigma_arg);
      }
      m.param("sigma", sigma_arg);
      emit(g, ordering_to_json(d, d_extremal_construction(d, sigma)), m);
    };
  });
  auto* odo_check = odo_cmd->add_subcommand("check", "Periodic language and tower counts");
  odo_check->add_option("diagram", diagram_path)->required();
  odo_check->add_option("ordering", ordering_path)->required();
  odo_check->add_option("--horizon", horizon);
  odo_check->add_option("--towers", towers, "Levels of tower counts");
  odo_check->callback([&] {
    action = [&] {
      Manifest m("odometer check");
      m.param("horizon", horizon);
      m.param("towers", towers);
      const Diagram d = load_input_diagram(diagram_path, m);
      const Ordering w = load_any_ordering(d, ordering_path, m);
      Json r = to_json(d, periodic_language_check(d, w, horizon));
      const Json t = to_json(tower_counts(d, towers));
      for (auto it = t.begin(); it != t.end(); ++it) r[it.key()] = it.value();
      emit(g, r, m);
    };
  });

  // measure
  auto* measure_cmd = app.add_subcommand("measure", "Uniform measure on orderings");
  measure_cmd->require_subcommand(1);
  auto* m_exact = measure_cmd->add_subcommand("exact-g", "Exact law of the number of maximal sources");
  m_exact->add_option("diagram", diagram_path)->required();
  m_exact->add_option("-k", k)->required();
  m_exact->add_option("-n", n)->required();
  m_exact->callback([&] {
    action = [&] {
      Manifest m("measure exact-g");
      m.param("k", k);
      m.param("n", n);
      const Diagram d = load_input_diagram(diagram_path, m);
      Json dist = Json::object();
      const auto p = exact_G_distribution(d, k, n);
      for (std::size_t i = 1; i < p.size(); ++i) dist[std::to_string(i)] = rational_to_json(p[i]);
      emit(g, {{"k", k}, {"n", n}, {"distribution", dist}}, m);
    };
  });
  auto* m_est = measure_cmd->add_subcommand("estimate-j", "Monte-Carlo estimate of the generic number of extremal paths");
  m_est->add_option("diagram", diagram_path)->required();
  m_est->add_option("--samples", samples);
  m_est->add_option("--depth", depth)->required();
  m_est->add_option("--seed", seed);
  m_est->add_option("--window", window);
  m_est->callback([&] {
    action = [&] {
      Manifest m("measure estimate-j");
      m.seed(seed);
      m.param("samples", samples);
      m.param("depth", depth);
      m.param("window", window);
      const Diagram d = load_input_diagram(diagram_path, m);
      emit(g, to_json(estimate_generic_j(d, depth, samples, window, seed, g.threads)), m);
    };
  });
  auto* m_div = measure_cmd->add_subcommand("divergence", "Partial sums along a level sequence");
  m_div->add_option("diagram", diagram_path)->required();
  m_div->add_option("-j", j);
  m_div->add_option("--levels", levels_arg, "n_1,n_2,...")->required();
  m_div->add_option("--samples", samples);
  m_div->add_option("--seed", seed);
  m_div->add_flag("--exact-only", exact_only);
  m_div->callback([&] {
    action = [&] {
      Manifest m("measure divergence");
      m.seed(seed);
      m.param("j", j);
      m.param("levels", parse_ints(levels_arg));
      m.param("samples", samples);
      const Diagram d = load_input_diagram(diagram_path, m);
      emit(g, to_json(divergence_diagnostic(d, j, parse_ints(levels_arg), samples, seed, exact_only, g.threads)), m);
    };
  });
  auto* m_one = measure_cmd->add_subcommand("generic-one", "Chain of levels with a uniformly heavy column");
  m_one->add_option("diagram", diagram_path)->required();
  m_one->add_option("--epsilon", epsilon, "Rational lower bound, e.g. 1/3");
  m_one->add_option("--depth", depth)->required();
  m_one->callback([&] {
    action = [&] {
      Manifest m("measure generic-one");
      m.param("epsilon", epsilon);
      m.param("depth", depth);
      const Diagram d = load_input_diagram(diagram_path, m);
      emit(g, to_json(generic_one_check(d, parse_rational(epsilon), depth)), m);
    };
  });
  auto* m_imp = measure_cmd->add_subcommand("imperfection", "How often random orderings with many extremal paths are imperfect");
  m_imp->add_option("diagram", diagram_path)->required();
  m_imp->add_option("--samples", samples);
  m_imp->add_option("--depth", depth)->required();
  m_imp->add_option("--horizon", horizon);
  m_imp->add_option("--seed", seed);
  m_imp->add_option("-q", q);
  m_imp->callback([&] {
    action = [&] {
      Manifest m("measure imperfection");
      m.seed(seed);
      m.param("samples", samples);
      m.param("depth", depth);
      m.param("horizon", horizon);
      m.param("q", q);
      const Diagram d = load_input_diagram(diagram_path, m);
      emit(g, to_json(imperfection_genericity_experiment(d, samples, depth, horizon, seed, q, g.threads)), m);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (const char* env = std::getenv("BRATTELI_THREADS")) {
    try {
      g.threads = std::max(1, std::stoi(env));
    } catch (const std::exception&) {
      std::cerr << "BRATTELI_THREADS must be a positive integer\n";
      return 2;
    }
  }

  try {
    if (action) action();
    return 0;
  } catch (const Error& e) {
    std::cerr << e.to_json().dump() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"error", "InternalError"}, {"what", e.what()}}.dump() << '\n';
    return 1;
  }
}

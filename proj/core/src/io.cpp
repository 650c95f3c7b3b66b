#include "bratteli/io.hpp"

#include <fstream>
#include <sstream>

#include "bratteli/error.hpp"

namespace bratteli {

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error("ParseError", {{"missing", key}});
  return j.at(key);
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) throw Error("ParseError", {{"reason", "matrix must be an array of rows"}});
  const std::size_t cols = j.front().size();
  Matrix m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw Error("ShapeMismatch", {{"row", r}, {"reason", "ragged matrix"}});
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = big_from_json(j[r][c]);
  }
  return m;
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(big_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

const std::vector<std::string>& skeleton_labels(const Diagram& d) {
  if (!d.strict_rank()) throw Error("ShapeMismatch", {{"reason", "skeletons need one vertex set for every level"}});
  return d.labels(1);
}

int label_index(const std::vector<std::string>& labels, const std::string& s) {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == s) return static_cast<int>(i);
  throw Error("ParseError", {{"unknown_label", s}});
}

Json vertex_list(const std::vector<std::string>& labels, const std::vector<int>& vs) {
  Json out = Json::array();
  for (int v : vs) out.push_back(labels[v]);
  return out;
}

Json int_map(const std::vector<std::string>& labels, const std::map<int, int>& m) {
  Json out = Json::object();
  for (const auto& [a, b] : m) out[labels[a]] = labels[b];
  return out;
}

Json witness_json(const Diagram& d, const Witness& w) {
  const auto& labels = d.labels(std::min(d.depth(), 2));
  Json levels = Json::array();
  for (const auto& [m, n] : w.levels) levels.push_back({m, n});
  return {{"kind", w.kind}, {"vertex", w.vertex >= 0 ? Json(labels[w.vertex]) : Json(nullptr)},
          {"partners", vertex_list(labels, w.partners)}, {"levels", levels}};
}

Json histogram(const std::map<int, long long>& h) {
  Json out = Json::object();
  for (const auto& [k, v] : h) out[std::to_string(k)] = v;
  return out;
}

Json block_form(const Diagram& d, const BlockForm& b) {
  const auto& labels = d.labels(1);
  Json comps = Json::array();
  for (const auto& c : b.minimal_components) comps.push_back(vertex_list(labels, c));
  Json out;
  out["detected"] = b.detected;
  out["minimalComponents"] = comps;
  out["cBlock"] = vertex_list(labels, b.c_block);
  out["positiveCRows"] = vertex_list(labels, b.positive_c_rows);
  out["permutation"] = vertex_list(labels, b.permutation);
  if (!b.reason.empty()) out["reason"] = b.reason;
  return out;
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("ParseError", {{"path", path}, {"reason", "cannot open"}});
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error("ParseError", {{"path", path}, {"reason", e.what()}});
  }
}

void write_json_file(const std::string& path, const Json& j, int indent) {
  std::ofstream out(path);
  if (!out) throw Error("ParseError", {{"path", path}, {"reason", "cannot write"}});
  out << j.dump(indent) << '\n';
}

Json big_to_json(const BigInt& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return static_cast<long long>(x);
  return to_string(x);
}

BigInt big_from_json(const Json& j) {
  if (j.is_number_unsigned()) return BigInt(j.get<unsigned long long>());
  if (j.is_number_integer()) {
    const long long v = j.get<long long>();
    if (v < 0) throw Error("NegativeEntry", {{"value", v}});
    return BigInt(v);
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) throw Error("ParseError", {{"integer", s}});
    return BigInt(s);
  }
  throw Error("ParseError", {{"reason", "expected a nonnegative integer"}});
}

Json rational_to_json(const Rational& r) {
  return to_string(numerator(r)) + "/" + to_string(denominator(r));
}

RawDiagram raw_diagram_from_json(const Json& j) {
  if (j.contains("schema") && j.at("schema") != kDiagramSchema) throw Error("ParseError", {{"schema", j.at("schema").dump()}});
  RawDiagram raw;
  const Json& labels = require(j, "labels");
  if (!labels.is_array() || labels.empty()) throw Error("ParseError", {{"reason", "labels must be a nonempty array"}});
  if (labels.front().is_array()) {
    for (const auto& level : labels) raw.labels.push_back(level.get<std::vector<std::string>>());
  } else {
    raw.labels.push_back(labels.get<std::vector<std::string>>());
  }
  const Json& schedule = require(j, "schedule");
  raw.mode = schedule_mode_from_string(require(schedule, "mode").get<std::string>());
  for (const auto& m : require(schedule, "matrices")) raw.matrices.push_back(matrix_from_json(m));
  if (schedule.contains("period") && schedule.at("period").get<std::size_t>() != raw.matrices.size())
    throw Error("ShapeMismatch", {{"period", schedule.at("period").dump()}, {"matrices", raw.matrices.size()}});
  if (j.contains("top_row")) {
    for (const auto& x : j.at("top_row")) raw.top_row.push_back(big_from_json(x));
  } else {
    raw.top_row.assign(raw.labels.front().size(), 1);
  }
  if (j.contains("depth")) raw.depth = j.at("depth").get<int>();
  return raw;
}

Diagram diagram_from_json(const Json& j) { return validate(raw_diagram_from_json(j)); }

Json diagram_to_json(const Diagram& d) {
  const RawDiagram raw = d.raw();
  Json out;
  out["schema"] = kDiagramSchema;
  out["labels"] = raw.labels.size() == 1 ? Json(raw.labels.front()) : Json(raw.labels);
  Json schedule;
  schedule["mode"] = to_string(raw.mode);
  Json ms = Json::array();
  for (const auto& m : raw.matrices) ms.push_back(matrix_to_json(m));
  schedule["matrices"] = ms;
  if (raw.mode == ScheduleMode::Periodic) schedule["period"] = raw.matrices.size();
  out["schedule"] = schedule;
  Json top = Json::array();
  for (const auto& x : raw.top_row) top.push_back(big_to_json(x));
  out["top_row"] = top;
  out["depth"] = raw.depth;
  return out;
}

Diagram load_diagram(const std::string& path) { return diagram_from_json(read_json_file(path)); }

Word word_from_json(const Diagram& d, int letter_level, const Json& j) {
  const auto& labels = d.labels(letter_level);
  Word w;
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (!d.single_char_labels()) throw Error("ParseError", {{"word", s}, {"reason", "multi-character labels need array words"}});
    for (char c : s) w.push_back(label_index(labels, std::string(1, c)));
  } else if (j.is_array()) {
    for (const auto& x : j) w.push_back(label_index(labels, x.get<std::string>()));
  } else {
    throw Error("ParseError", {{"reason", "word must be a string or an array"}});
  }
  return w;
}

Json word_to_json(const Diagram& d, int letter_level, const Word& w) {
  const auto& labels = d.labels(letter_level);
  if (d.single_char_labels()) {
    std::string s;
    for (int x : w) s += labels[x];
    return s;
  }
  return vertex_list(labels, w);
}

Ordering ordering_from_json(const Diagram& d, const Json& j) {
  auto level_words = [&](int n, const Json& entry) {
    const auto& range = d.labels(n);
    LevelWords ws(range.size());
    std::vector<bool> seen(range.size(), false);
    for (auto it = entry.begin(); it != entry.end(); ++it) {
      const int v = label_index(range, it.key());
      ws[v] = word_from_json(d, n - 1, it.value());
      seen[v] = true;
    }
    for (std::size_t v = 0; v < seen.size(); ++v)
      if (!seen[v]) throw Error("OrderingMismatch", {{"level", n}, {"vertex", range[v]}, {"reason", "missing word"}});
    return ws;
  };

  Ordering w;
  if (j.contains("substitution")) {
    w = Ordering::stationary(level_words(2, j.at("substitution")));
  } else {
    const ScheduleMode mode = schedule_mode_from_string(require(j, "mode").get<std::string>());
    std::map<int, const Json*> levels;
    for (auto it = require(j, "words").begin(); it != j.at("words").end(); ++it) {
      int n = 0;
      try {
        n = std::stoi(it.key());
      } catch (const std::exception&) {
        throw Error("ParseError", {{"level", it.key()}});
      }
      if (n >= 2) levels[n] = &it.value();  // level-1 words only order edges from the root
    }
    if (levels.empty()) throw Error("ParseError", {{"reason", "no words for levels >= 2"}});
    int expect = 2;
    for (const auto& [n, _] : levels)
      if (n != expect++) throw Error("ParseError", {{"reason", "levels must be consecutive from 2"}, {"level", n}});
    std::vector<LevelWords> entries;
    for (const auto& [n, entry] : levels) entries.push_back(level_words(n, *entry));
    if (mode == ScheduleMode::Stationary) {
      if (entries.size() != 1) throw Error("ParseError", {{"reason", "stationary orderings have one level entry"}});
      w = Ordering::stationary(std::move(entries.front()));
    } else if (mode == ScheduleMode::Periodic) {
      w = Ordering::periodic(std::move(entries));
    } else {
      w = Ordering::explicit_levels(std::move(entries));
    }
  }
  check_ordering(d, w);
  return w;
}

Json ordering_to_json(const Diagram& d, const Ordering& w) {
  Json words = Json::object();
  for (int i = 0; i < w.period(); ++i) {
    const int n = i + 2;
    const LevelWords& ws = w.entries()[i];
    Json entry = Json::object();
    for (std::size_t v = 0; v < ws.size(); ++v) entry[d.labels(n)[v]] = word_to_json(d, n - 1, ws[v]);
    words[std::to_string(n)] = entry;
  }
  Json out;
  out["mode"] = to_string(w.mode());
  out["words"] = words;
  return out;
}

Ordering load_ordering(const Diagram& d, const std::string& path) { return ordering_from_json(d, read_json_file(path)); }

std::pair<Skeleton, Sigma> skeleton_from_json(const Diagram& d, const Json& j) {
  const auto& labels = skeleton_labels(d);
  Skeleton sk;
  for (const auto& x : require(j, "maxVertices")) sk.max_vertices.push_back(label_index(labels, x.get<std::string>()));
  for (const auto& x : require(j, "minVertices")) sk.min_vertices.push_back(label_index(labels, x.get<std::string>()));
  std::sort(sk.max_vertices.begin(), sk.max_vertices.end());
  std::sort(sk.min_vertices.begin(), sk.min_vertices.end());
  auto source_map = [&](const char* key) {
    std::vector<int> out(labels.size(), -1);
    for (auto it = require(j, key).begin(); it != j.at(key).end(); ++it)
      out[label_index(labels, it.key())] = label_index(labels, it.value().get<std::string>());
    for (std::size_t v = 0; v < out.size(); ++v)
      if (out[v] < 0) throw Error("InvalidSkeleton", {{"field", key}, {"vertex", labels[v]}, {"reason", "missing"}});
    return out;
  };
  sk.max_source = source_map("maxSource");
  sk.min_source = source_map("minSource");
  Sigma sigma;
  for (auto it = require(j, "sigma").begin(); it != j.at("sigma").end(); ++it)
    sigma[label_index(labels, it.key())] = label_index(labels, it.value().get<std::string>());
  check_skeleton(sk);
  check_sigma(sk, sigma);
  return {std::move(sk), std::move(sigma)};
}

Json skeleton_to_json(const Diagram& d, const Skeleton& sk, const Sigma& sigma) {
  const auto& labels = skeleton_labels(d);
  Json out;
  out["maxVertices"] = vertex_list(labels, sk.max_vertices);
  out["minVertices"] = vertex_list(labels, sk.min_vertices);
  Json mx = Json::object(), mn = Json::object();
  for (std::size_t v = 0; v < sk.size(); ++v) {
    mx[labels[v]] = labels[sk.max_source[v]];
    mn[labels[v]] = labels[sk.min_source[v]];
  }
  out["maxSource"] = mx;
  out["minSource"] = mn;
  out["sigma"] = int_map(labels, sigma);
  return out;
}

std::vector<std::string> node_labels(const Diagram& d, const AssociatedGraph& g) {
  const auto& labels = skeleton_labels(d);
  std::vector<std::string> out;
  for (const auto& n : g.nodes) {
    std::string s = "[" + labels[n.min_vertex] + "," + labels[n.max_vertex] + "] {";
    for (std::size_t i = 0; i < n.members.size(); ++i) s += (i ? "," : "") + labels[n.members[i]];
    out.push_back(s + "}");
  }
  return out;
}

Json to_json(const Diagram& d, const ClassificationReport& r) {
  Json out;
  out["probeDepth"] = r.probe_depth;
  out["rankLower"] = r.rank_lower;
  out["rankUpper"] = r.rank_upper;
  out["simpleAtDepth"] = r.simple_at_depth;
  out["simpleLevel"] = r.simple_level;
  out["multiEdgeAtDepth"] = r.multi_edge_at_depth;
  out["multiEdgeLevel"] = r.multi_edge_level;
  out["uniform"] = block_form(d, r.uniform);
  out["telescoped"] = block_form(d, r.telescoped);
  out["telescopedStep"] = r.telescoped_step;
  Json per = Json::array();
  for (const auto& b : r.per_level) per.push_back(block_form(d, b));
  out["perLevel"] = per;
  return out;
}

Json to_json(const Diagram& d, const ExtremalReport& r) {
  auto side = [&](const ExtremalSide& s) {
    Json t = Json::array();
    for (const auto& traj : s.trajectories) {
      Json path = Json::array();
      for (std::size_t i = 0; i < traj.size(); ++i) path.push_back(d.labels(static_cast<int>(i) + 1)[traj[i]]);
      t.push_back(path);
    }
    Json o;
    o["count"] = s.count;
    o["stabilized"] = s.stabilized;
    o["stabilizationLevel"] = s.stabilization_level;
    o["level1Vertices"] = vertex_list(d.labels(1), s.level1_vertices);
    o["vertical"] = s.vertical();
    o["trajectories"] = t;
    return o;
  };
  Json out;
  out["probeDepth"] = r.probe_depth;
  out["window"] = r.window;
  out["max"] = side(r.max);
  out["min"] = side(r.min);
  return out;
}

Json to_json(const Diagram& d, const PerfectionVerdict& v) {
  const auto& labels = d.labels(std::min(d.depth(), 2));
  Json out;
  out["status"] = to_string(v.status);
  out["exact"] = v.exact;
  out["horizon"] = v.horizon;
  out["telescoping"] = {{"first", v.telescope_first}, {"step", v.telescope_step}};
  out["maxVertices"] = vertex_list(labels, v.max_vertices);
  out["minVertices"] = vertex_list(labels, v.min_vertices);
  out["sigma"] = int_map(labels, v.sigma);
  out["witness"] = v.witness ? witness_json(d, *v.witness) : Json(nullptr);
  Json adj = Json::array();
  for (const auto& [a, b] : v.adjacency) adj.push_back({labels[a], labels[b]});
  out["adjacency"] = adj;
  if (!v.note.empty()) out["note"] = v.note;
  return out;
}

Json to_json(const Diagram& d, const LanguageSample& s) {
  auto words = [&](const std::set<Word>& ws) {
    Json out = Json::array();
    for (const auto& w : ws) out.push_back(word_to_json(d, 1, w));
    return out;
  };
  Json out;
  out["window"] = {{"mLo", s.window.m_lo}, {"mHi", s.window.m_hi}, {"nHi", s.window.n_hi}};
  out["maxLen"] = s.max_len;
  out["persistent"] = words(s.persistent);
  out["sometimes"] = words(s.sometimes);
  return out;
}

Json to_json(const Diagram& d, const ExactLanguage& s) {
  Json words = Json::array();
  for (const auto& [w, at] : s.first_seen) words.push_back({{"word", word_to_json(d, 1, w)}, {"firstSeen", {at.first, at.second}}});
  Json out;
  out["exact"] = s.exact;
  out["levelsScanned"] = s.levels_scanned;
  out["words"] = words;
  return out;
}

Json to_json(const Diagram& d, const AssociatedGraph& g) {
  const auto names = node_labels(d, g);
  Json nodes = Json::array(), edges = Json::array();
  for (std::size_t i = 0; i < g.nodes.size(); ++i) nodes.push_back(names[i]);
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    for (int t : g.edges[i]) edges.push_back({names[i], names[t]});
  Json out;
  out["nodes"] = nodes;
  out["edges"] = edges;
  out["connectivity"] = to_string(connectivity(g));
  out["sigma"] = int_map(skeleton_labels(d), g.sigma);
  return out;
}

Json to_json(const Diagram& d, const BalanceReport& b) {
  const auto& labels = skeleton_labels(d);
  Json table = Json::array();
  for (const auto& r : b.table)
    table.push_back({{"row", labels[r.u]}, {"maxVertex", labels[r.max_vertex]}, {"maxSide", big_to_json(r.max_side)},
                     {"minSide", big_to_json(r.min_side)}, {"ok", r.ok()}});
  Json out;
  out["balanced"] = b.balanced;
  out["table"] = table;
  return out;
}

Json to_json(const Diagram& d, const EnumerationReport& r) {
  Json passing = Json::array();
  for (const auto& c : r.passing) passing.push_back(skeleton_to_json(d, c.skeleton, c.sigma));
  Json out;
  out["k"] = r.k;
  out["simple"] = r.simple;
  out["candidates"] = r.candidates;
  out["structuralFailures"] = r.structural_failures;
  out["balanceFailures"] = r.balance_failures;
  out["nonexistenceCertified"] = r.nonexistence_certified();
  out["passing"] = passing;
  return out;
}

Json to_json(const Diagram& d, const PeriodicLanguage& p) {
  Json out;
  out["periodic"] = p.periodic;
  out["word"] = p.periodic ? word_to_json(d, 1, p.word) : Json(nullptr);
  out["horizon"] = p.horizon;
  if (p.failure_level >= 0) out["failureLevel"] = p.failure_level;
  if (!p.note.empty()) out["note"] = p.note;
  return out;
}

Json to_json(const TowerCounts& t) {
  Json counts = Json::array(), ratios = Json::array(), expected = Json::array();
  for (const auto& c : t.counts) counts.push_back(big_to_json(c));
  for (const auto& r : t.ratios) ratios.push_back(rational_to_json(r));
  for (const auto& e : t.expected) expected.push_back(big_to_json(e));
  Json out;
  out["towerCounts"] = counts;
  out["ratios"] = ratios;
  out["expected"] = expected;
  out["lawHolds"] = t.law_holds;
  return out;
}

Json to_json(const Frequency& f) {
  const auto [lo, hi] = f.wilson95();
  Json out;
  out["hits"] = f.hits;
  out["samples"] = f.samples;
  out["estimate"] = f.estimate();
  out["sigma"] = f.sigma();
  out["ci95"] = {lo, hi};
  return out;
}

Json to_json(const GenericJReport& r) {
  auto frac = [&](long long unstab) {
    return r.samples ? static_cast<double>(r.samples - unstab) / static_cast<double>(r.samples) : 0.0;
  };
  Json out;
  out["j_estimate"] = {{"max", r.j_max}, {"min", r.j_min}};
  out["histogram"] = {{"max", histogram(r.max_histogram)}, {"min", histogram(r.min_histogram)}};
  out["unstabilized"] = {{"max", r.max_unstabilized}, {"min", r.min_unstabilized}};
  out["stabilizedFraction"] = {{"max", frac(r.max_unstabilized)}, {"min", frac(r.min_unstabilized)}};
  out["modalFraction"] = {{"max", to_json(r.max_modal)}, {"min", to_json(r.min_modal)}};
  out["ci95"] = {{"max", out["modalFraction"]["max"]["ci95"]}, {"min", out["modalFraction"]["min"]["ci95"]}};
  out["seeds"] = {{"base", r.seed}, {"samples", r.samples}};
  out["depth"] = r.depth;
  out["window"] = r.window;
  return out;
}

Json to_json(const DivergenceReport& r) {
  Json terms = Json::array();
  for (const auto& t : r.terms) {
    Json o;
    o["from"] = t.from;
    o["to"] = t.to;
    o["exact"] = t.exact;
    if (t.exact) o["value"] = rational_to_json(t.value);
    o["estimate"] = t.estimate;
    if (!t.exact) o["sigma"] = t.sigma;
    o["partialSum"] = t.partial_sum;
    terms.push_back(o);
  }
  Json out;
  out["j"] = r.j;
  out["terms"] = terms;
  out["allExact"] = r.all_exact;
  if (r.all_exact) out["exactPartialSum"] = rational_to_json(r.exact_partial_sum);
  out["slope"] = r.slope;
  out["intercept"] = r.intercept;
  return out;
}

Json to_json(const GenericOneReport& r) {
  Json ws = Json::array();
  for (const auto& w : r.witnesses)
    ws.push_back({{"from", w.from}, {"to", w.to}, {"vertex", w.vertex}, {"minEntry", rational_to_json(w.min_entry)}});
  Json out;
  out["epsilon"] = rational_to_json(r.epsilon);
  out["depth"] = r.depth;
  out["found"] = r.found();
  out["reachedDepth"] = r.reached_depth;
  out["witnesses"] = ws;
  return out;
}

Json to_json(const ImperfectionReport& r) {
  Json out;
  out["samples"] = r.samples;
  out["q"] = r.q;
  out["stabilized"] = r.stabilized;
  out["aboveQ"] = r.above_q;
  out["imperfect"] = r.imperfect;
  out["inconclusive"] = r.inconclusive;
  out["imperfectFraction"] = to_json(r.imperfect_fraction);
  return out;
}

}  // namespace bratteli

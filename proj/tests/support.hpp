#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include <bratteli/io.hpp>

namespace bratteli::testing {

inline std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

inline Diagram load(const std::string& name) { return load_diagram(fixture(name + ".json")); }

inline Ordering load_order(const Diagram& d, const std::string& file) { return load_ordering(d, fixture(file + ".json")); }

inline std::pair<Skeleton, Sigma> load_skeleton(const Diagram& d, const std::string& name) {
  return skeleton_from_json(d, read_json_file(fixture(name + ".skeleton.json")));
}

inline Word letters(const Diagram& d, const std::string& s) { return word_from_json(d, 1, Json(s)); }

inline std::string text(const Diagram& d, const Word& w) { return word_to_json(d, 1, w).get<std::string>(); }

// w(v, m, n) by direct recursive expansion, without any of the library's word code.
inline Word expand(const Ordering& w, int v, int m, int n) {
  if (n == m) return {v};
  Word out;
  for (int u : w.words(n)[v]) {
    const Word part = expand(w, u, m, n - 1);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

inline std::set<Word> factors(const Word& w, std::size_t len) {
  std::set<Word> out;
  for (std::size_t i = 0; i + len <= w.size(); ++i) out.emplace(w.begin() + i, w.begin() + i + len);
  return out;
}

// Pairs xy seen in w(v, m, n) for every n in [n_lo, n_hi] (union over v and m in [1, m_hi]).
inline std::set<Word> persistent_pairs(const Diagram& d, const Ordering& w, int m_hi, int n_lo, int n_hi) {
  std::set<Word> common;
  bool first = true;
  for (int n = n_lo; n <= n_hi; ++n) {
    std::set<Word> here;
    for (int m = 1; m <= std::min(m_hi, n - 1); ++m)
      for (std::size_t v = 0; v < d.size(n); ++v)
        for (const auto& f : factors(expand(w, static_cast<int>(v), m, n), 2)) here.insert(f);
    if (first) {
      common = here;
      first = false;
    } else {
      std::set<Word> keep;
      for (const auto& f : common)
        if (here.count(f)) keep.insert(f);
      common = keep;
    }
  }
  return common;
}

}  // namespace bratteli::testing

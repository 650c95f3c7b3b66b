#include <algorithm>
#include <numeric>

#include "bratteli/error.hpp"
#include "bratteli/language.hpp"

namespace bratteli {

namespace {

void add_factors(const Word& w, int ell, std::set<Word>& out) {
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t len = 1; len <= static_cast<std::size_t>(ell) && i + len <= w.size(); ++len)
      out.emplace(w.begin() + i, w.begin() + i + len);
}

Word tail(const Word& w, std::size_t n) {
  return n >= w.size() ? w : Word(w.end() - n, w.end());
}

}  // namespace

FactorSummary FactorSummary::letter(int u, int ell) {
  FactorSummary s;
  s.length = 1;
  if (ell > 1) s.prefix = s.suffix = {u};
  s.factors.insert({u});
  return s;
}

void FactorSummary::append(const FactorSummary& next, int ell) {
  if (next.length == 0) return;
  if (length == 0) {
    *this = next;
    return;
  }
  const std::size_t border = static_cast<std::size_t>(ell) - 1;
  Word joined = suffix;
  joined.insert(joined.end(), next.prefix.begin(), next.prefix.end());
  add_factors(joined, ell, factors);
  factors.insert(next.factors.begin(), next.factors.end());
  if (prefix.size() < border) {
    Word p = prefix;
    p.insert(p.end(), next.prefix.begin(), next.prefix.end());
    p.resize(std::min(p.size(), border));
    prefix = std::move(p);
  }
  if (next.length >= border) {
    suffix = next.suffix;
  } else {
    Word s = suffix;
    s.insert(s.end(), next.suffix.begin(), next.suffix.end());
    suffix = tail(s, border);
  }
  length = std::min<std::size_t>(length + next.length, static_cast<std::size_t>(ell));
}

std::vector<FactorSummary> lift_summaries(const Diagram& d, const Ordering& w,
                                          const std::vector<FactorSummary>& below, int n, int ell) {
  const LevelWords& ws = w.words(n);
  std::vector<FactorSummary> out(d.size(n));
  for (std::size_t v = 0; v < out.size(); ++v)
    for (int u : ws[v]) out[v].append(below[u], ell);
  return out;
}

LevelWindow default_window(int horizon) {
  LevelWindow win;
  win.m_lo = 1;
  win.m_hi = std::max(1, horizon / 2);
  win.n_hi = std::max(win.m_hi + 1, horizon);
  return win;
}

LanguageSample language_sample(const Diagram& d, const Ordering& w, int max_len, LevelWindow window) {
  if (max_len < 1) throw Error("InvalidLength", {{"max_len", max_len}});
  if (window.m_lo < 1 || window.m_hi < window.m_lo || window.n_hi <= window.m_hi)
    throw Error("LevelOutOfRange", {{"m_lo", window.m_lo}, {"m_hi", window.m_hi}, {"n_hi", window.n_hi}});
  if (window.n_hi > joint_max_level(d, w))
    throw Error("LevelOutOfRange", {{"level", window.n_hi}, {"max_level", joint_max_level(d, w)}});

  const int first_n = window.m_hi + 1;
  std::vector<std::set<Word>> seen(window.n_hi - first_n + 1);
  for (int m = window.m_lo; m <= window.m_hi; ++m) {
    std::vector<FactorSummary> s(d.size(m));
    for (std::size_t u = 0; u < s.size(); ++u) s[u] = FactorSummary::letter(static_cast<int>(u), max_len);
    for (int n = m + 1; n <= window.n_hi; ++n) {
      s = lift_summaries(d, w, s, n, max_len);
      if (n < first_n) continue;
      for (const auto& fs : s) seen[n - first_n].insert(fs.factors.begin(), fs.factors.end());
    }
  }

  LanguageSample out;
  out.window = window;
  out.max_len = max_len;
  std::set<Word> all;
  for (const auto& s : seen) all.insert(s.begin(), s.end());
  for (const Word& x : all) {
    const bool everywhere = std::all_of(seen.begin(), seen.end(), [&](const auto& s) { return s.count(x) > 0; });
    (everywhere ? out.persistent : out.sometimes).insert(x);
  }
  return out;
}

int joint_period(const Diagram& d, const Ordering& w) {
  if (d.mode() == ScheduleMode::Explicit || w.mode() == ScheduleMode::Explicit)
    throw Error("NotRepeating", {{"diagram", to_string(d.mode())}, {"ordering", to_string(w.mode())}});
  return std::lcm(d.period(), w.period());
}

ExactLanguage exact_language(const Diagram& d, const Ordering& w, int ell, int max_iterations) {
  const int p = joint_period(d, w);
  ExactLanguage out;
  out.exact = true;
  for (int m = 1; m <= p; ++m) {
    std::vector<FactorSummary> s(d.size(m));
    for (std::size_t u = 0; u < s.size(); ++u) s[u] = FactorSummary::letter(static_cast<int>(u), ell);
    std::set<std::pair<int, std::vector<std::pair<Word, Word>>>> states;
    bool closed = false;
    for (int n = m + 1; n <= m + max_iterations; ++n) {
      s = lift_summaries(d, w, s, n, ell);
      ++out.levels_scanned;
      for (const auto& fs : s)
        for (const Word& x : fs.factors) out.first_seen.emplace(x, std::make_pair(m, n));
      std::vector<std::pair<Word, Word>> borders;
      for (const auto& fs : s) borders.emplace_back(fs.prefix, fs.suffix);
      if (!states.emplace((n - m) % p, std::move(borders)).second) {
        closed = true;
        break;
      }
    }
    if (!closed) out.exact = false;
  }
  return out;
}

}  // namespace bratteli

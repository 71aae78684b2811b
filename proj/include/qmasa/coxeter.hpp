#pragma once

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmasa/rational.hpp"

namespace qmasa {

// The group is the free product of L copies of Z/2Z: generators s_0..s_{L-1},
// each an involution, no other relations.  Elements are reduced words, i.e.
// letter strings with no two equal adjacent letters.
using Letter = std::uint8_t;
using Word = std::vector<Letter>;

// Total order by (length, lexicographic).  Basis maps use this so that all
// iteration, serialization and reports are deterministic.
struct LenLexLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

inline void check_num_factors(int L) {
  if (L < 3)
    throw std::invalid_argument("number of free factors must be at least 3, got " +
                                std::to_string(L));
}

inline void check_letter(int s, int L) {
  if (s < 0 || s >= L)
    throw std::invalid_argument("generator index " + std::to_string(s) +
                                " out of range for L=" + std::to_string(L));
}

inline bool is_reduced(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == w[i - 1]) return false;
  return true;
}

// Reduce an arbitrary letter string using s^2 = e.  Cancellation cascades,
// so a stack pass suffices.
inline Word reduce(const std::vector<int>& raw, int L) {
  check_num_factors(L);
  Word out;
  out.reserve(raw.size());
  for (int s : raw) {
    check_letter(s, L);
    if (!out.empty() && out.back() == static_cast<Letter>(s))
      out.pop_back();
    else
      out.push_back(static_cast<Letter>(s));
  }
  return out;
}

// Product of two reduced words; only the junction can cancel, and it can
// cascade inward.
inline Word multiply(const Word& a, const Word& b) {
  std::size_t i = a.size(), j = 0;
  while (i > 0 && j < b.size() && a[i - 1] == b[j]) {
    --i;
    ++j;
  }
  Word out(a.begin(), a.begin() + i);
  out.insert(out.end(), b.begin() + j, b.end());
  return out;
}

// Every generator is its own inverse, so inversion reverses the word.
inline Word inverse(const Word& w) { return Word(w.rbegin(), w.rend()); }

inline std::uint64_t sphere_count(int L, int n) {
  check_num_factors(L);
  if (n < 0) return 0;
  if (n == 0) return 1;
  std::uint64_t c = L;
  for (int i = 1; i < n; ++i) c *= static_cast<std::uint64_t>(L - 1);
  return c;
}

// All reduced words of length exactly n, in lexicographic order.
inline std::vector<Word> sphere(int L, int n) {
  check_num_factors(L);
  std::vector<Word> cur{Word{}};
  for (int len = 0; len < n; ++len) {
    std::vector<Word> next;
    next.reserve(cur.size() * (L - 1) + 1);
    for (const Word& w : cur)
      for (int s = 0; s < L; ++s) {
        if (!w.empty() && w.back() == static_cast<Letter>(s)) continue;
        Word e = w;
        e.push_back(static_cast<Letter>(s));
        next.push_back(std::move(e));
      }
    cur = std::move(next);
  }
  return cur;
}

// All reduced words of length at most n, in (length, lex) order.
inline std::vector<Word> ball(int L, int n) {
  std::vector<Word> out;
  for (int k = 0; k <= n; ++k) {
    auto sk = sphere(L, k);
    out.insert(out.end(), sk.begin(), sk.end());
  }
  return out;
}

// Radius of convergence of the growth series sum_n #sphere(n) t^n.
inline Rational growth_radius(int L) {
  check_num_factors(L);
  return rat(1, L - 1);
}

// Text form: comma-separated letters, "e" for the identity.
inline std::string word_str(const Word& w) {
  if (w.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(static_cast<int>(w[i]));
  }
  return out;
}

inline Word word_parse(const std::string& s, int L) {
  check_num_factors(L);
  if (s == "e" || s.empty()) return Word{};
  std::vector<int> raw;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) throw std::invalid_argument("bad word literal: " + s);
    std::size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("bad word literal: " + s);
    raw.push_back(v);
  }
  Word w = reduce(raw, L);
  // A word literal must already be reduced; silent reduction would hide typos.
  if (w.size() != raw.size())
    throw std::invalid_argument("word literal is not reduced: " + s);
  return w;
}

}  // namespace qmasa

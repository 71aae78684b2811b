#pragma once

#include <algorithm>
#include <cctype>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "qmasa/linalg.hpp"

namespace qmasa {

// Finite-dimensional truncation of the q-deformed Fock space over C^d.
// Basis: tensor words (letter strings over {0..d-1}); the vacuum is the
// empty word.  The q-inner product twists the standard one by the
// q-symmetrizer P_q.
using TensorWord = std::vector<std::uint8_t>;

struct DegLexLess {
  bool operator()(const TensorWord& a, const TensorWord& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

template <class S>
using FockVec = std::map<TensorWord, S, DegLexLess>;

namespace fock_detail {

inline Rational conj_s(const Rational& x) { return x; }
inline double conj_s(double x) { return x; }
inline std::complex<double> conj_s(const std::complex<double>& x) {
  return std::conj(x);
}

template <class S>
void add_term(FockVec<S>& m, const TensorWord& w,
              const std::type_identity_t<S>& c) {
  if (c == S(0)) return;
  auto [it, inserted] = m.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == S(0)) m.erase(it);
  }
}

inline TensorWord drop_index(const TensorWord& w, std::size_t i) {
  TensorWord out;
  out.reserve(w.size() - 1);
  out.insert(out.end(), w.begin(), w.begin() + i);
  out.insert(out.end(), w.begin() + i + 1, w.end());
  return out;
}

}  // namespace fock_detail

template <class S>
FockVec<S> vacuum() {
  FockVec<S> v;
  v[TensorWord{}] = S(1);
  return v;
}

template <class S>
FockVec<S>& fock_axpy(FockVec<S>& out, const FockVec<S>& x,
                      const std::type_identity_t<S>& a) {
  if (a == S(0)) return out;
  for (const auto& [w, c] : x) fock_detail::add_term(out, w, a * c);
  return out;
}

// [n]_q = 1 + q + ... + q^{n-1}, and its factorial.
template <class S>
S q_bracket(const S& q, int n) {
  S acc(0), pw(1);
  for (int i = 0; i < n; ++i) {
    acc += pw;
    pw *= q;
  }
  return acc;
}

template <class S>
S q_factorial(const S& q, int n) {
  S acc(1);
  for (int i = 1; i <= n; ++i) acc *= q_bracket(q, i);
  return acc;
}

// ---------------------------------------------------------------------------
// The q-symmetrizer P_q, via the pull-to-front recursion
//   P(w) = sum_i q^i  e_{w_i} (x) P(w with position i removed).
// Memoized per word; coefficients live in the scalar type.
// ---------------------------------------------------------------------------
template <class S>
class QSymmetrizer {
 public:
  explicit QSymmetrizer(const S& q) : q_(q) {}

  const FockVec<S>& symmetrize(const TensorWord& w) {
    auto it = memo_.find(w);
    if (it != memo_.end()) return it->second;
    FockVec<S> out;
    if (w.empty()) {
      out[w] = S(1);
    } else {
      S qi(1);
      for (std::size_t i = 0; i < w.size(); ++i) {
        const FockVec<S>& sub = symmetrize(fock_detail::drop_index(w, i));
        for (const auto& [u, c] : sub) {
          TensorWord head;
          head.reserve(u.size() + 1);
          head.push_back(w[i]);
          head.insert(head.end(), u.begin(), u.end());
          fock_detail::add_term(out, head, qi * c);
        }
        qi *= q_;
      }
    }
    return memo_.emplace(w, std::move(out)).first->second;
  }

  const S& q() const { return q_; }

 private:
  S q_;
  std::map<TensorWord, FockVec<S>, DegLexLess> memo_;
};

// Brute-force q-symmetrizer: sum over all position permutations weighted by
// q^{inversions}.  Factorial cost; for cross-checking only.
template <class S>
FockVec<S> symmetrize_oracle(const TensorWord& w, const S& q) {
  const std::size_t n = w.size();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  FockVec<S> out;
  do {
    int inv = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inv;
    TensorWord u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = w[perm[i]];
    S pw(1);
    for (int i = 0; i < inv; ++i) pw *= q;
    fock_detail::add_term(out, u, pw);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// <x, y>_q = sum_w x_w conj((P_q y)_w); degrees pair diagonally.
template <class S>
S q_inner(const FockVec<S>& x, const FockVec<S>& y, QSymmetrizer<S>& sym) {
  S acc(0);
  for (const auto& [v, cv] : y) {
    const FockVec<S>& pv = sym.symmetrize(v);
    for (const auto& [w, pw] : pv) {
      auto it = x.find(w);
      if (it != x.end()) acc += it->second * fock_detail::conj_s(cv * pw);
    }
  }
  return acc;
}

template <class S>
S q_norm2(const FockVec<S>& x, QSymmetrizer<S>& sym) {
  return q_inner(x, x, sym);
}

// ---------------------------------------------------------------------------
// Creation / annihilation / field operators.  The truncation is hard: a
// creation that would leave the truncated space throws.
// ---------------------------------------------------------------------------
template <class S>
FockVec<S> create(const std::vector<S>& xi, const FockVec<S>& v, int trunc) {
  FockVec<S> out;
  for (const auto& [w, c] : v) {
    if (static_cast<int>(w.size()) >= trunc)
      throw std::overflow_error("truncation overflow: creation above degree cap");
    for (std::size_t t = 0; t < xi.size(); ++t) {
      if (xi[t] == S(0)) continue;
      TensorWord tw;
      tw.reserve(w.size() + 1);
      tw.push_back(static_cast<std::uint8_t>(t));
      tw.insert(tw.end(), w.begin(), w.end());
      fock_detail::add_term(out, tw, xi[t] * c);
    }
  }
  return out;
}

template <class S>
FockVec<S> annihilate(const std::vector<S>& xi, const FockVec<S>& v, const S& q) {
  FockVec<S> out;
  for (const auto& [w, c] : v) {
    S qi(1);
    for (std::size_t i = 0; i < w.size(); ++i) {
      const S& x = xi[w[i]];
      if (x != S(0))
        fock_detail::add_term(out, fock_detail::drop_index(w, i),
                              qi * fock_detail::conj_s(x) * c);
      qi *= q;
    }
  }
  return out;
}

template <class S>
FockVec<S> field_apply(const std::vector<S>& xi, const FockVec<S>& v, const S& q,
                       int trunc) {
  FockVec<S> out = create(xi, v, trunc);
  fock_axpy(out, annihilate(xi, v, q), S(1));
  return out;
}

// Right-sided (commutant) versions: creation appends, annihilation weights
// positions from the far end.
template <class S>
FockVec<S> create_right(const std::vector<S>& xi, const FockVec<S>& v, int trunc) {
  FockVec<S> out;
  for (const auto& [w, c] : v) {
    if (static_cast<int>(w.size()) >= trunc)
      throw std::overflow_error("truncation overflow: creation above degree cap");
    for (std::size_t t = 0; t < xi.size(); ++t) {
      if (xi[t] == S(0)) continue;
      TensorWord wt = w;
      wt.push_back(static_cast<std::uint8_t>(t));
      fock_detail::add_term(out, wt, xi[t] * c);
    }
  }
  return out;
}

template <class S>
FockVec<S> annihilate_right(const std::vector<S>& xi, const FockVec<S>& v,
                            const S& q) {
  FockVec<S> out;
  for (const auto& [w, c] : v) {
    S qi(1);
    for (std::size_t i = w.size(); i-- > 0;) {
      const S& x = xi[w[i]];
      if (x != S(0))
        fock_detail::add_term(out, fock_detail::drop_index(w, i),
                              qi * fock_detail::conj_s(x) * c);
      qi *= q;
    }
  }
  return out;
}

template <class S>
FockVec<S> field_apply_right(const std::vector<S>& xi, const FockVec<S>& v,
                             const S& q, int trunc) {
  FockVec<S> out = create_right(xi, v, trunc);
  fock_axpy(out, annihilate_right(xi, v, q), S(1));
  return out;
}

namespace fock_detail {

template <class S>
std::vector<S> unit_vector(int d, int t) {
  std::vector<S> xi(d, S(0));
  xi[t] = S(1);
  return xi;
}

}  // namespace fock_detail

// ---------------------------------------------------------------------------
// Wick words.  W(u) is the unique operator polynomial in the fields with
// W(u) vacuum = u; the recursion peels the leading letter:
//   W(t.v) = F(e_t) W(v) - sum_k q^k [v_k == t] W(v with k removed).
// The right version peels the trailing letter with mirrored weights.
// ---------------------------------------------------------------------------
template <class S>
class WickOperators {
 public:
  WickOperators(int d, const S& q, int trunc) : d_(d), q_(q), trunc_(trunc) {}

  FockVec<S> apply(const TensorWord& u, const FockVec<S>& v) const {
    if (u.empty()) return v;
    TensorWord tail(u.begin() + 1, u.end());
    FockVec<S> out = field_apply(fock_detail::unit_vector<S>(d_, u[0]),
                                 apply(tail, v), q_, trunc_);
    S qk(1);
    for (std::size_t k = 0; k < tail.size(); ++k) {
      if (tail[k] == u[0]) {
        FockVec<S> sub = apply(fock_detail::drop_index(tail, k), v);
        fock_axpy(out, sub, S(-qk));
      }
      qk *= q_;
    }
    return out;
  }

  FockVec<S> apply_right(const TensorWord& u, const FockVec<S>& v) const {
    if (u.empty()) return v;
    TensorWord front(u.begin(), u.end() - 1);
    const std::uint8_t t = u.back();
    FockVec<S> out = field_apply_right(fock_detail::unit_vector<S>(d_, t),
                                       apply_right(front, v), q_, trunc_);
    S qk(1);
    for (std::size_t k = front.size(); k-- > 0;) {
      if (front[k] == t) {
        FockVec<S> sub = apply_right(fock_detail::drop_index(front, k), v);
        fock_axpy(out, sub, S(-qk));
      }
      qk *= q_;
    }
    return out;
  }

  // Linear extension to a symbol (a vector whose words index Wick words).
  FockVec<S> apply_symbol(const FockVec<S>& symbol, const FockVec<S>& v) const {
    FockVec<S> out;
    for (const auto& [u, c] : symbol) fock_axpy(out, apply(u, v), c);
    return out;
  }

  int d() const { return d_; }
  const S& q() const { return q_; }
  int trunc() const { return trunc_; }

 private:
  int d_;
  S q_;
  int trunc_;
};

// ---------------------------------------------------------------------------
// First quantization: apply a one-particle matrix letterwise.  t[s][u] is
// the (s,u) entry, i.e. (T e_u) = sum_s t[s][u] e_s.
// ---------------------------------------------------------------------------
template <class S>
FockVec<S> first_quantization(const std::vector<std::vector<S>>& t,
                              const FockVec<S>& v) {
  const std::size_t d = t.size();
  FockVec<S> out;
  for (const auto& [w, c] : v) {
    // Expand the tensor product over this word.
    std::vector<std::pair<TensorWord, S>> acc{{TensorWord{}, c}};
    for (std::uint8_t letter : w) {
      std::vector<std::pair<TensorWord, S>> next;
      for (const auto& [u, cu] : acc)
        for (std::size_t s = 0; s < d; ++s) {
          if (t[s][letter] == S(0)) continue;
          TensorWord ext = u;
          ext.push_back(static_cast<std::uint8_t>(s));
          next.emplace_back(std::move(ext), cu * t[s][letter]);
        }
      acc = std::move(next);
    }
    for (auto& [u, cu] : acc) fock_detail::add_term(out, u, cu);
  }
  return out;
}

// Exact orthogonality test for a rational one-particle matrix.
inline bool is_orthogonal_exact(const std::vector<std::vector<Rational>>& u) {
  const std::size_t d = u.size();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Rational acc(0);
      for (std::size_t k = 0; k < d; ++k) acc += u[k][i] * u[k][j];
      if (acc != Rational(i == j ? 1 : 0)) return false;
    }
  return true;
}

inline std::vector<std::vector<Rational>> transpose(
    const std::vector<std::vector<Rational>>& u) {
  std::vector<std::vector<Rational>> out(u.size(),
                                         std::vector<Rational>(u.size()));
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < u.size(); ++j) out[i][j] = u[j][i];
  return out;
}

// All tensor words of the given degree, lexicographic.
inline std::vector<TensorWord> tensor_words(int d, int degree) {
  std::vector<TensorWord> cur{TensorWord{}};
  for (int i = 0; i < degree; ++i) {
    std::vector<TensorWord> next;
    next.reserve(cur.size() * d);
    for (const auto& w : cur)
      for (int t = 0; t < d; ++t) {
        TensorWord e = w;
        e.push_back(static_cast<std::uint8_t>(t));
        next.push_back(std::move(e));
      }
    cur = std::move(next);
  }
  return cur;
}

// Comma-separated letters, e.g. "1,0,1"; empty string is the vacuum word.
inline TensorWord tensor_word_parse(const std::string& s) {
  TensorWord w;
  if (s == "e") return w;  // same empty-word spelling as the group words
  std::string cur;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == ',') {
      if (!cur.empty()) {
        const int v = std::stoi(cur);
        if (v < 0 || v > 255)
          throw std::invalid_argument("tensor word letter out of range: " + cur);
        w.push_back(static_cast<std::uint8_t>(v));
        cur.clear();
      }
    } else if (!std::isspace(static_cast<unsigned char>(s[i]))) {
      cur += s[i];
    }
  }
  return w;
}

inline std::vector<TensorWord> tensor_ball(int d, int max_degree) {
  std::vector<TensorWord> out;
  for (int n = 0; n <= max_degree; ++n) {
    auto layer = tensor_words(d, n);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Positivity of the q-inner product, degree by degree.  P_q preserves the
// letter multiset, so the Gram matrix is block diagonal over multiset
// classes; each block is tested by exact LDL^T.
// ---------------------------------------------------------------------------
inline bool q_gram_positive_definite(int d, int degree, const Rational& q) {
  QSymmetrizer<Rational> sym(q);
  std::map<TensorWord, std::vector<TensorWord>> blocks;
  for (const auto& w : tensor_words(d, degree)) {
    TensorWord key = w;
    std::sort(key.begin(), key.end());
    blocks[key].push_back(w);
  }
  for (const auto& [key, words] : blocks) {
    const std::size_t n = words.size();
    std::map<TensorWord, std::size_t, DegLexLess> index;
    for (std::size_t i = 0; i < n; ++i) index[words[i]] = i;
    RatMatrix gram(n, RatVector(n, Rational(0)));
    for (std::size_t j = 0; j < n; ++j) {
      const FockVec<Rational>& pw = sym.symmetrize(words[j]);
      for (const auto& [w, c] : pw) gram[index.at(w)][j] = c;
    }
    if (!positive_definite(std::move(gram))) return false;
  }
  return true;
}

// Matrix of the field operator of xi on the degree-truncated basis; used for
// CSV export and the tridiagonal checks.
inline RatMatrix field_matrix(const std::vector<Rational>& xi, const Rational& q,
                              int d, int trunc) {
  auto words = tensor_ball(d, trunc);
  std::map<TensorWord, std::size_t, DegLexLess> index;
  for (std::size_t i = 0; i < words.size(); ++i) index[words[i]] = i;
  RatMatrix out(words.size(), RatVector(words.size(), Rational(0)));
  for (std::size_t j = 0; j < words.size(); ++j) {
    FockVec<Rational> v;
    v[words[j]] = 1;
    FockVec<Rational> img = annihilate(xi, v, q);
    if (static_cast<int>(words[j].size()) < trunc)
      fock_axpy(img, create(xi, v, trunc), Rational(1));
    for (const auto& [w, c] : img) out[index.at(w)][j] = c;
  }
  return out;
}

}  // namespace qmasa

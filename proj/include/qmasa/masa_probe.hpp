#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmasa/linalg.hpp"
#include "qmasa/radial.hpp"

namespace qmasa {

// ---------------------------------------------------------------------------
// Almost-commuting vectors for an adjacent pair of words.
//
// Two distinct words of the same length n are adjacent when w = a.z and
// v = z.b for a common core z of length n-1 and single letters a, b.  The
// vector
//   eta_delta = sum_k r^k psi_k,     r = (1-delta)/(L-1),
//   psi_k     = sum e_{x.a.z.b.y}    (|x|=|y|=k, x.a and b.y reduced)
// nearly intertwines left and right translation by the radial generator.
// ---------------------------------------------------------------------------
struct AdjacentPair {
  int L = 0;
  Word z;
  Letter a = 0, b = 0;

  AdjacentPair(int L_, const Word& z_, int a_, int b_) : L(L_), z(z_) {
    check_num_factors(L);
    check_letter(a_, L);
    check_letter(b_, L);
    a = static_cast<Letter>(a_);
    b = static_cast<Letter>(b_);
    if (!is_reduced(z)) throw std::invalid_argument("core word is not reduced");
    if (!z.empty() && z.front() == a)
      throw std::invalid_argument("a.z is not reduced");
    if (!z.empty() && z.back() == b)
      throw std::invalid_argument("z.b is not reduced");
    if (z.empty() && a == b)
      throw std::invalid_argument("adjacent pair degenerates to w == v");
  }

  Word w() const {
    Word out{a};
    out.insert(out.end(), z.begin(), z.end());
    return out;
  }
  Word v() const {
    Word out = z;
    out.push_back(b);
    return out;
  }
};

// Explicit support of psi_k; grows like (L-1)^{2k}, so keep k small in tests.
inline std::vector<Word> psi_k_words(const AdjacentPair& pr, int k) {
  std::vector<Word> left{Word{}}, right{Word{}};
  for (int i = 0; i < k; ++i) {
    std::vector<Word> nl, nr;
    // x grows on the left end of x.a.z.b.y: extend to the front.
    for (const Word& x : left)
      for (int s = 0; s < pr.L; ++s) {
        Letter sl = static_cast<Letter>(s);
        if (x.empty() ? sl == pr.a : x.front() == sl) continue;
        Word e{sl};
        e.insert(e.end(), x.begin(), x.end());
        nl.push_back(std::move(e));
      }
    for (const Word& y : right)
      for (int s = 0; s < pr.L; ++s) {
        Letter sl = static_cast<Letter>(s);
        if (y.empty() ? sl == pr.b : y.back() == sl) continue;
        Word e = y;
        e.push_back(sl);
        nr.push_back(std::move(e));
      }
    left = std::move(nl);
    right = std::move(nr);
  }
  std::vector<Word> out;
  out.reserve(left.size() * right.size());
  Word core{pr.a};
  core.insert(core.end(), pr.z.begin(), pr.z.end());
  core.push_back(pr.b);
  for (const Word& x : left)
    for (const Word& y : right) {
      Word w = x;
      w.insert(w.end(), core.begin(), core.end());
      w.insert(w.end(), y.begin(), y.end());
      out.push_back(std::move(w));
    }
  return out;
}

inline std::uint64_t psi_k_count(int L, int k) {
  std::uint64_t c = 1;
  for (int i = 0; i < 2 * k; ++i) c *= static_cast<std::uint64_t>(L - 1);
  return c;
}

template <class S>
using VectorOnWords = std::map<Word, S, LenLexLess>;

// (h - R_h) applied to an l^2 vector: left minus right translation action of
// the radial generator.  The deformation terms enter with opposite signs and
// cancel; keeping them in the computation makes that a checked fact rather
// than an assumption (the result is independent of p).
template <class S>
VectorOnWords<S> commutator_apply(int L, const VectorOnWords<S>& vec, const S& p) {
  check_num_factors(L);
  VectorOnWords<S> out;
  for (const auto& [u, c] : vec) {
    for (int s = 0; s < L; ++s) {
      Word g{static_cast<Letter>(s)};
      Word su = multiply(g, u);
      out[su] += c;
      if (su.size() < u.size()) out[u] += p * c;
      Word us = multiply(u, g);
      out[us] -= c;
      if (us.size() < u.size()) out[u] -= p * c;
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = (it->second == S(0)) ? out.erase(it) : std::next(it);
  return out;
}

// Truncated almost-commuting vector with exact rational weights.
inline VectorOnWords<Rational> eta_truncated(const AdjacentPair& pr,
                                             const Rational& delta, int K) {
  if (K < 0) throw std::invalid_argument("negative truncation depth");
  if (delta <= 0 || delta >= 1)
    throw std::invalid_argument("delta must lie in (0,1)");
  Rational r = (1 - delta) / (pr.L - 1);
  VectorOnWords<Rational> out;
  Rational rk(1);
  for (int k = 0; k <= K; ++k) {
    for (const Word& w : psi_k_words(pr, k)) out[w] += rk;
    rk *= r;
  }
  return out;
}

// Exact squared intertwining defect of the truncated vector: the norm of
//   (e_v - e_w) - (h eta - eta h).
// Independent of p (the deformation terms cancel in the commutator); the
// closed form below reproduces this for every K.
inline Rational intertwining_residual2(const AdjacentPair& pr,
                                       const Rational& delta, int K,
                                       const Rational& p) {
  VectorOnWords<Rational> res =
      commutator_apply(pr.L, eta_truncated(pr, delta, K), p);
  res[pr.v()] -= 1;
  res[pr.w()] += 1;
  Rational n2(0);
  for (const auto& [u, c] : res) n2 += c * c;
  return n2;
}

// || (e_v - e_w) - [h, eta] ||^2 in closed form for the truncated vector:
//   2 (L-1) [ delta^2 sum_{k<K} (1-delta)^{2k} + (1-delta)^{2K} ].
// The delta^2 part is the mismatch at interior depths, the last term is the
// cut edge at depth K.
inline Rational commutator_residual2_closed(int L, const Rational& delta, int K) {
  Rational r2 = (1 - delta) * (1 - delta);
  Rational geo(0), pw(1);
  for (int k = 0; k < K; ++k) {
    geo += pw;
    pw *= r2;
  }
  return Rational(2 * (L - 1)) * (delta * delta * geo + pw);
}

// Smallest K making the tail of the closed-form residual fall below tol:
//   4 (1-delta)^{2(K+1)} / (1 - (1-delta)^2) < tol.
inline int truncation_depth(const Rational& delta, double tol) {
  if (delta <= 0 || delta >= 1)
    throw std::invalid_argument("delta must lie in (0,1)");
  if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
  const double r2 = rat_double((1 - delta) * (1 - delta));
  double tail = 4.0 * r2 / (1.0 - r2);
  int K = 0;
  while (tail >= tol) {
    tail *= r2;
    ++K;
    if (K > 1 << 22) throw std::runtime_error("truncation depth exploded");
  }
  return K;
}

inline void check_truncation_depth(const Rational& delta, double tol, int K) {
  int need = truncation_depth(delta, tol);
  if (K < need)
    throw std::invalid_argument("truncation depth " + std::to_string(K) +
                                " too small for requested tolerance (need " +
                                std::to_string(need) + ")");
}

// Chain of pairwise-adjacent words joining two words of the same length.
// When the junction w_last|v_first is reduced the direct interpolation
//   u_k = w[k:] . v[:k]          (k = 0..n, from w to v)
// works.  Otherwise insert a buffer letter b distinct from both v's last and
// w's first letter (possible because L >= 3):
//   v, v[k:] . b . w[:k-1] (k = 1..n), w   (from v to w).
struct AdjacencyChain {
  std::vector<Word> words;
  int orientation = +1;  // +1: runs w -> v, -1: runs v -> w
};

inline AdjacencyChain adjacency_chain(int L, const Word& v, const Word& w) {
  check_num_factors(L);
  if (!is_reduced(v) || !is_reduced(w))
    throw std::invalid_argument("chain endpoints must be reduced");
  if (v.size() != w.size())
    throw std::invalid_argument("chain endpoints must have equal length");
  AdjacencyChain chain;
  const int n = static_cast<int>(w.size());
  if (v == w) {
    chain.words = {w};
    return chain;
  }
  if (w.back() != v.front()) {
    chain.orientation = +1;
    for (int k = 0; k <= n; ++k) {
      Word u(w.begin() + k, w.end());
      u.insert(u.end(), v.begin(), v.begin() + k);
      chain.words.push_back(std::move(u));
    }
    return chain;
  }
  chain.orientation = -1;
  Letter buf = 0;
  while (buf == v.back() || buf == w.front()) ++buf;
  if (buf >= L) throw std::logic_error("no buffer letter available");
  chain.words.push_back(v);
  for (int k = 1; k <= n; ++k) {
    Word u(v.begin() + k, v.end());
    u.push_back(buf);
    u.insert(u.end(), w.begin(), w.begin() + (k - 1));
    chain.words.push_back(std::move(u));
  }
  chain.words.push_back(w);
  return chain;
}

// Residual budget for a general pair at a given delta: every consecutive
// chain pair is adjacent and contributes the same closed-form residual, so
// the total is (#links) * per-link residual.
struct ChainResidual {
  int links = 0;
  int K = 0;
  double per_link = 0;
  double total = 0;
};

inline ChainResidual chain_residual(int L, const Word& v, const Word& w,
                                    const Rational& delta, double tol) {
  ChainResidual out;
  AdjacencyChain chain = adjacency_chain(L, v, w);
  out.links = static_cast<int>(chain.words.size()) - 1;
  out.K = truncation_depth(delta, tol);
  out.per_link =
      std::sqrt(rat_double(commutator_residual2_closed(L, delta, out.K)));
  out.total = out.links * out.per_link;
  return out;
}

// ---------------------------------------------------------------------------
// Commutant probe.  Unknowns are l^2 coefficients on ball(K); one linear
// equation per word in ball(K-1) states that (h - R_h) xi vanishes there.
// Equations at radius K-1 and K reference coefficients outside the ball and
// are dropped by design, so the kernel is a relaxation: it contains the
// radial vectors (exactly), plus boundary-supported artifacts.  Restricting
// to solutions supported in ball(K-2) removes the artifacts.
// ---------------------------------------------------------------------------
struct CommutantProbe {
  int L = 0, K = 0;
  int rows = 0, cols = 0;
  int kernel_dim = 0;
  int interior_dim = 0;          // solutions supported in ball(K-2)
  bool interior_is_radial = false;
  std::vector<double> interior_part_norm;   // per kernel basis vector
  std::vector<double> radial_distance_rel;  // distance of that part from radial
};

inline CommutantProbe commutant_probe(int L, int K) {
  check_num_factors(L);
  if (K < 2) throw std::invalid_argument("probe needs K >= 2");
  CommutantProbe rep;
  rep.L = L;
  rep.K = K;
  const std::vector<Word> cols = ball(L, K);
  const std::vector<Word> rows = ball(L, K - 1);
  const std::vector<Word> interior = ball(L, K - 2);
  rep.cols = static_cast<int>(cols.size());
  rep.rows = static_cast<int>(rows.size());
  std::map<Word, int, LenLexLess> row_index;
  for (std::size_t i = 0; i < rows.size(); ++i) row_index[rows[i]] = static_cast<int>(i);

  RatMatrix A(rows.size(), RatVector(cols.size(), Rational(0)));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    VectorOnWords<Rational> e;
    e[cols[j]] = 1;
    auto img = commutator_apply<Rational>(L, e, Rational(0));
    for (const auto& [u, c] : img) {
      auto it = row_index.find(u);
      if (it != row_index.end()) A[it->second][j] = c;
    }
  }

  auto kern = kernel_basis(A);
  rep.kernel_dim = static_cast<int>(kern.size());

  // Sub-system: columns restricted to the interior ball.
  RatMatrix Ai(rows.size(), RatVector(interior.size(), Rational(0)));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < interior.size(); ++j) Ai[i][j] = A[i][j];
  auto interior_kern = kernel_basis(Ai);
  rep.interior_dim = static_cast<int>(interior_kern.size());

  // Radial span on the interior ball: one indicator per sphere.
  std::vector<RatVector> radial;
  for (int r = 0; r <= K - 2; ++r) {
    RatVector v(interior.size(), Rational(0));
    for (std::size_t j = 0; j < interior.size(); ++j)
      if (static_cast<int>(interior[j].size()) == r) v[j] = 1;
    radial.push_back(std::move(v));
  }
  RatMatrix stacked = radial;
  for (const auto& v : interior_kern) stacked.push_back(v);
  rep.interior_is_radial = (rep.interior_dim == K - 1) &&
                           (rank(std::move(stacked)) == K - 1);

  // Distances of full-kernel vectors (restricted to the interior) from the
  // radial span, via exact sphere averaging.
  for (const auto& v : kern) {
    RatVector part(interior.size(), Rational(0));
    for (std::size_t j = 0; j < interior.size(); ++j) part[j] = v[j];
    Rational n2 = dot(part, part);
    if (n2 == 0) {
      rep.interior_part_norm.push_back(0);
      rep.radial_distance_rel.push_back(0);
      continue;
    }
    Rational proj2(0);
    for (int r = 0; r <= K - 2; ++r) {
      Rational s(0);
      long cnt = 0;
      for (std::size_t j = 0; j < interior.size(); ++j)
        if (static_cast<int>(interior[j].size()) == r) {
          s += part[j];
          ++cnt;
        }
      if (cnt) proj2 += s * s / cnt;
    }
    rep.interior_part_norm.push_back(std::sqrt(rat_double(n2)));
    rep.radial_distance_rel.push_back(std::sqrt(rat_double((n2 - proj2) / n2)));
  }
  return rep;
}

}  // namespace qmasa

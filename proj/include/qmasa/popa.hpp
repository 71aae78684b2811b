#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "qmasa/eigen_support.hpp"
#include "qmasa/qfock.hpp"
#include "qmasa/rational.hpp"

namespace qmasa {

// Intertwining-decay experiments on the truncated q-Fock space: projections
// onto a pure-power subalgebra, weakly-null vector families, and the decay
// tables for compressed products of Wick words.

namespace popa_detail {

inline double scalar_mag(const Rational& x) { return std::abs(rat_double(x)); }
inline double scalar_mag(double x) { return std::abs(x); }
inline double scalar_mag(const std::complex<double>& x) { return std::abs(x); }

// Dense Gaussian solve with magnitude pivoting; small systems only.
template <class S>
std::vector<S> linsolve_dense(std::vector<std::vector<S>> a, std::vector<S> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (scalar_mag(a[r][col]) > scalar_mag(a[piv][col])) piv = r;
    if (a[piv][col] == S(0))
      throw std::runtime_error("normal equations are singular");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == S(0)) continue;
      S f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<S> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

inline TensorWord power_word(int letter, int k) {
  return TensorWord(static_cast<std::size_t>(k),
                    static_cast<std::uint8_t>(letter));
}

}  // namespace popa_detail

// q-orthogonal projection onto span{e_t^{(x)n} : n <= max_degree}, computed
// by solving the normal equations of the pure-power family in the q-Gram.
template <class S>
FockVec<S> proj_pure_powers(const FockVec<S>& v, int t, int max_degree,
                            QSymmetrizer<S>& sym) {
  const std::size_t n = static_cast<std::size_t>(max_degree) + 1;
  std::vector<FockVec<S>> family(n);
  for (std::size_t j = 0; j < n; ++j)
    family[j][popa_detail::power_word(t, static_cast<int>(j))] = S(1);
  std::vector<std::vector<S>> gram(n, std::vector<S>(n, S(0)));
  std::vector<S> rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      gram[i][j] = q_inner(family[j], family[i], sym);
    rhs[i] = q_inner(v, family[i], sym);
  }
  std::vector<S> coeff = popa_detail::linsolve_dense(gram, rhs);
  FockVec<S> out;
  for (std::size_t j = 0; j < n; ++j)
    fock_axpy(out, family[j], coeff[j]);
  return out;
}

// Degree cutoff on a vector supported on pure powers of a single letter.
template <class S>
FockVec<S> proj_degree_cutoff(int cutoff, const FockVec<S>& v) {
  int letter = -1;
  for (const auto& [w, c] : v) {
    for (std::uint8_t s : w) {
      if (letter < 0) letter = s;
      if (s != letter)
        throw std::invalid_argument(
            "degree cutoff requires pure-power support on one index");
    }
  }
  FockVec<S> out;
  for (const auto& [w, c] : v)
    if (static_cast<int>(w.size()) <= cutoff) out[w] = c;
  return out;
}

// Unnormalized k-th tensor power of a one-particle vector, expanded over
// basis words.
template <class S>
FockVec<S> pure_power(const std::vector<S>& v, int k) {
  FockVec<S> out = vacuum<S>();
  for (int i = 0; i < k; ++i) {
    FockVec<S> next;
    for (const auto& [w, c] : out)
      for (std::size_t t = 0; t < v.size(); ++t) {
        if (v[t] == S(0)) continue;
        TensorWord e = w;
        e.push_back(static_cast<std::uint8_t>(t));
        fock_detail::add_term(next, e, c * v[t]);
      }
    out = std::move(next);
  }
  return out;
}

// Sum of every word with (j-k) letters `a` and k letters `b`; term count is
// binomial(j, k).
template <class S>
FockVec<S> r_jk(int j, int k, int a, int b) {
  if (k < 0 || k > j) throw std::invalid_argument("r_jk: need 0 <= k <= j");
  TensorWord w;
  for (int i = 0; i < j - k; ++i) w.push_back(static_cast<std::uint8_t>(a));
  for (int i = 0; i < k; ++i) w.push_back(static_cast<std::uint8_t>(b));
  std::sort(w.begin(), w.end());
  FockVec<S> out;
  do {
    out[w] = S(1);
  } while (std::next_permutation(w.begin(), w.end()));
  return out;
}

// ---------------------------------------------------------------------------
// Weakly-null families.
// ---------------------------------------------------------------------------

// Phase functions of the truncated Jacobi matrix of the field operator on
// the pure-power subspace of one direction.  f_k is the k-th power of the
// Cayley phase (lambda - i)/(lambda + i), unimodular on the real spectrum,
// so eta_k = f_k(J) vacuum is the symbol of a genuine unitary of the
// truncated matrix algebra.
class JacobiPhaseFamily {
 public:
  JacobiPhaseFamily(int direction, double q, int max_degree)
      : direction_(direction), q_(q), n_(max_degree + 1) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n_, n_);
    double bracket = 0.0, qp = 1.0;
    for (int i = 0; i + 1 < n_; ++i) {
      bracket += qp;  // [i+1]_q
      qp *= q;
      j(i, i + 1) = j(i + 1, i) = std::sqrt(bracket);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
    lambda_ = es.eigenvalues();
    vecs_ = es.eigenvectors();
    norm_factors_.resize(n_);
    double fact = 1.0;
    bracket = 0.0;
    qp = 1.0;
    for (int i = 0; i < n_; ++i) {
      norm_factors_[i] = std::sqrt(fact);  // ||e^{(x)i}||_q = sqrt([i]_q!)
      bracket += qp;
      qp *= q;
      fact *= bracket;
    }
  }

  // Coordinates of f_k(J) vacuum in the normalized pure-power basis.
  Eigen::VectorXcd coords(int k) const {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n_);
    for (int j = 0; j < n_; ++j) {
      std::complex<double> phase(lambda_(j), -1.0);
      phase /= std::complex<double>(lambda_(j), 1.0);
      std::complex<double> fk = std::pow(phase, k);
      for (int i = 0; i < n_; ++i) out(i) += vecs_(i, j) * vecs_(0, j) * fk;
    }
    return out;
  }

  FockVec<std::complex<double>> eta(int k) const {
    Eigen::VectorXcd c = coords(k);
    FockVec<std::complex<double>> out;
    for (int i = 0; i < n_; ++i) {
      std::complex<double> amp = c(i) / norm_factors_[i];
      if (amp != std::complex<double>(0.0))
        out[popa_detail::power_word(direction_, i)] = amp;
    }
    return out;
  }

  double euclidean_norm(int k) const { return coords(k).norm(); }

  double vacuum_overlap(int k) const { return std::abs(coords(k)(0)); }

  int size() const { return n_; }

 private:
  int direction_;
  double q_;
  int n_;
  Eigen::VectorXd lambda_;
  Eigen::MatrixXd vecs_;
  std::vector<double> norm_factors_;
};

// ---------------------------------------------------------------------------
// Experiment configuration and the two decay experiments.
// ---------------------------------------------------------------------------
struct ExperimentConfig {
  Rational q = rat(1, 2);
  int d = 2;
  int trunc = 10;
  Rational alpha = 0;  // weight of the target direction (index 1) in v
  Rational beta = 1;   // weight of the orthogonal direction (index 0)
  TensorWord x_word;
  TensorWord y_word;

  int target_direction() const { return 1; }
  int null_direction() const { return 0; }

  void validate() const {
    if (d < 2) throw std::invalid_argument("config: need dimension >= 2");
    if (rat_abs(q) >= 1) throw std::invalid_argument("config: need |q| < 1");
    if (alpha * alpha + beta * beta != Rational(1))
      throw std::invalid_argument("config: alpha^2 + beta^2 must equal 1");
    if (beta == 0) throw std::invalid_argument("config: beta must be nonzero");
    const int degs =
        static_cast<int>(x_word.size()) + static_cast<int>(y_word.size());
    if (trunc < degs + 2)
      throw std::invalid_argument(
          "config: truncation must be at least deg x + deg y + 2");
    for (std::uint8_t s : x_word)
      if (s >= d) throw std::invalid_argument("config: x word letter out of range");
    for (std::uint8_t s : y_word)
      if (s >= d) throw std::invalid_argument("config: y word letter out of range");
  }
};

// Compressed product applied to a vector: W(x) W_r(y) eta, the symbol of
// x eta-element y-tilde acting on the vacuum side.
template <class S>
FockVec<S> compressed_product(const WickOperators<S>& wick, const TensorWord& x,
                              const TensorWord& y, const FockVec<S>& eta) {
  return wick.apply(x, wick.apply_right(y, eta));
}

struct OrthogonalDecayRow {
  int k = 0;
  Rational norm2 = 0;      // ||P(x y~ eta_k)||^2 with eta_k normalized
  bool exact_zero = false;
  double norm = 0.0;
};

struct OrthogonalDecayReport {
  std::vector<OrthogonalDecayRow> rows;
  int zero_threshold = 0;  // rows with k > threshold must vanish exactly
  bool zero_law_holds = false;
};

inline OrthogonalDecayReport decay_orthogonal(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.alpha != 0)
    throw std::invalid_argument("orthogonal decay requires alpha = 0");
  WickOperators<Rational> wick(cfg.d, cfg.q, cfg.trunc);
  QSymmetrizer<Rational> sym(cfg.q);
  const int n = static_cast<int>(cfg.x_word.size());
  const int m = static_cast<int>(cfg.y_word.size());
  const int kmax = cfg.trunc - n - m;
  OrthogonalDecayReport report;
  report.zero_threshold = n + m;
  report.zero_law_holds = true;
  for (int k = 0; k <= kmax; ++k) {
    FockVec<Rational> eta;
    eta[popa_detail::power_word(cfg.null_direction(), k)] = 1;
    FockVec<Rational> prod =
        compressed_product(wick, cfg.x_word, cfg.y_word, eta);
    FockVec<Rational> proj =
        proj_pure_powers(prod, cfg.target_direction(), cfg.trunc, sym);
    OrthogonalDecayRow row;
    row.k = k;
    // eta_k is e_0^{(x)k} / sqrt([k]_q!), so divide by the norm square.
    row.norm2 = q_norm2(proj, sym) / q_factorial(cfg.q, k);
    row.exact_zero = (row.norm2 == 0);
    row.norm = std::sqrt(rat_double(row.norm2));
    if (k > report.zero_threshold && !row.exact_zero)
      report.zero_law_holds = false;
    report.rows.push_back(row);
  }
  return report;
}

// Float sweep of the same compression along the jacobi-phase family.
struct JacobiSweepRow {
  int k = 0;
  double eta_norm = 0.0;
  double vacuum_overlap = 0.0;
  double norm = 0.0;
};

inline std::vector<JacobiSweepRow> decay_jacobi_phase(
    const ExperimentConfig& cfg, int kmax) {
  cfg.validate();
  const double q = rat_double(cfg.q);
  const int n = static_cast<int>(cfg.x_word.size());
  const int m = static_cast<int>(cfg.y_word.size());
  const int eta_degree = cfg.trunc - n - m;
  WickOperators<std::complex<double>> wick(
      cfg.d, std::complex<double>(q, 0.0), cfg.trunc);
  QSymmetrizer<std::complex<double>> sym(std::complex<double>(q, 0.0));
  JacobiPhaseFamily family(cfg.null_direction(), q, eta_degree);
  std::vector<JacobiSweepRow> rows;
  for (int k = 0; k <= kmax; ++k) {
    JacobiSweepRow row;
    row.k = k;
    row.eta_norm = family.euclidean_norm(k);
    row.vacuum_overlap = family.vacuum_overlap(k);
    FockVec<std::complex<double>> prod =
        compressed_product(wick, cfg.x_word, cfg.y_word, family.eta(k));
    FockVec<std::complex<double>> proj =
        proj_pure_powers(prod, cfg.target_direction(), cfg.trunc, sym);
    row.norm = std::sqrt(std::abs(q_norm2(proj, sym)));
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// General (non-orthogonal) configuration: envelope for the truncated tensor
// powers and the full decay sweep.
// ---------------------------------------------------------------------------

// ||v^{(x)j}||^2_q restricted to the shells with at most `cap` factors in the
// beta direction: sum_{k <= min(j, cap)} alpha^{2(j-k)} beta^{2k} C(j,k) [j]_q!.
inline Rational vtilde_norm2(int j, int cap, const Rational& alpha,
                             const Rational& beta, const Rational& q) {
  Rational fact = q_factorial(q, j);
  Rational acc = 0;
  Rational binom = 1;  // C(j, k)
  Rational a2 = alpha * alpha, b2 = beta * beta;
  for (int k = 0; k <= std::min(j, cap); ++k) {
    Rational shell = binom * fact;
    Rational weight = 1;
    for (int i = 0; i < j - k; ++i) weight *= a2;
    for (int i = 0; i < k; ++i) weight *= b2;
    acc += weight * shell;
    binom = binom * Rational(j - k) / Rational(k + 1);
  }
  return acc;
}

struct EnvelopeRow {
  int j = 0;
  Rational lhs = 0;       // (1-q)^j ||vtilde^{(x)j}||^2
  Rational envelope = 0;  // C j^{n+m} |alpha|^j
  bool within = false;
};

struct GeneralSweepRow {
  int k = 0;
  Rational norm2 = 0;
  double norm = 0.0;
};

struct GeneralDecayReport {
  std::vector<EnvelopeRow> envelope_rows;
  Rational envelope_constant = 0;
  bool envelope_holds = false;
  std::vector<GeneralSweepRow> sweep;
  bool strictly_decreasing_tail = false;
};

inline GeneralDecayReport decay_general(const ExperimentConfig& cfg,
                                        int jmax = 14, int jfit = 4) {
  cfg.validate();
  if (cfg.alpha == 0)
    throw std::invalid_argument("general decay requires alpha nonzero");
  const int n = static_cast<int>(cfg.x_word.size());
  const int m = static_cast<int>(cfg.y_word.size());
  const int cap = n + m;
  GeneralDecayReport report;

  // Envelope: fit the constant at j = jfit, then compare exactly above it.
  Rational abs_alpha = rat_abs(cfg.alpha);
  auto envelope_at = [&](int j, const Rational& c) -> Rational {
    Rational poly = 1;
    for (int i = 0; i < cap; ++i) poly *= Rational(j);
    Rational geo = 1;
    for (int i = 0; i < j; ++i) geo *= abs_alpha;
    return c * poly * geo;
  };
  Rational one_minus_q = Rational(1) - cfg.q;
  auto lhs_at = [&](int j) -> Rational {
    Rational pre = 1;
    for (int i = 0; i < j; ++i) pre *= one_minus_q;
    return pre * vtilde_norm2(j, cap, cfg.alpha, cfg.beta, cfg.q);
  };
  Rational c = lhs_at(jfit) / envelope_at(jfit, Rational(1));
  report.envelope_constant = c;
  report.envelope_holds = true;
  for (int j = jfit; j <= jmax; ++j) {
    EnvelopeRow row;
    row.j = j;
    row.lhs = lhs_at(j);
    row.envelope = envelope_at(j, c);
    row.within = (row.lhs <= row.envelope);
    if (!row.within) report.envelope_holds = false;
    report.envelope_rows.push_back(row);
  }

  // Full decay sweep with eta_k = normalized v^{(x)k}.
  WickOperators<Rational> wick(cfg.d, cfg.q, cfg.trunc);
  QSymmetrizer<Rational> sym(cfg.q);
  std::vector<Rational> v(cfg.d, Rational(0));
  v[cfg.target_direction()] = cfg.alpha;
  v[cfg.null_direction()] = cfg.beta;
  const int kmax = cfg.trunc - n - m;
  for (int k = 0; k <= kmax; ++k) {
    FockVec<Rational> eta = pure_power(v, k);
    FockVec<Rational> prod =
        compressed_product(wick, cfg.x_word, cfg.y_word, eta);
    FockVec<Rational> proj =
        proj_pure_powers(prod, cfg.target_direction(), cfg.trunc, sym);
    GeneralSweepRow row;
    row.k = k;
    row.norm2 = q_norm2(proj, sym) / q_factorial(cfg.q, k);
    row.norm = std::sqrt(rat_double(row.norm2));
    report.sweep.push_back(row);
  }
  // The tail {k : k > n+m} must be strictly decreasing.
  report.strictly_decreasing_tail = true;
  for (std::size_t i = 0; i + 1 < report.sweep.size(); ++i) {
    if (report.sweep[i].k <= cap) continue;
    if (!(report.sweep[i + 1].norm2 < report.sweep[i].norm2))
      report.strictly_decreasing_tail = false;
  }
  return report;
}

}  // namespace qmasa

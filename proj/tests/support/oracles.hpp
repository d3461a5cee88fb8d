#pragma once

// Test-only reference computations. Nothing here calls into the code paths
// it is used to check: values are computed with plain 64-bit arithmetic and
// exhaustive enumeration.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "numera/automata.hpp"

namespace numera::oracle {

using Terms = std::vector<std::int64_t>;

inline Terms terms(const std::vector<std::int64_t>& coeff, const std::vector<std::int64_t>& init,
                   std::size_t count) {
  Terms u(init.begin(), init.end());
  while (u.size() < count) {
    std::int64_t next = 0;
    const std::size_t base = u.size() - coeff.size();
    for (std::size_t i = 0; i < coeff.size(); ++i) next += coeff[i] * u[base + i];
    u.push_back(next);
  }
  u.resize(count);
  return u;
}

inline Terms fibonacci_terms(std::size_t count) { return terms({1, 1}, {1, 2}, count); }
inline Terms sqrt2plus1_terms(std::size_t count) { return terms({1, 2}, {1, 3}, count); }
inline Terms lbonacci_terms(std::size_t l, std::size_t count) {
  std::vector<std::int64_t> init;
  for (std::size_t i = 0; i < l; ++i) init.push_back(std::int64_t{1} << i);
  return terms(std::vector<std::int64_t>(l, 1), init, count);
}

/// Value of an MSD-first digit string.
inline std::int64_t value(const Terms& u, const std::vector<Digit>& w) {
  std::int64_t v = 0;
  for (std::size_t i = 0; i < w.size(); ++i) v += static_cast<std::int64_t>(w[w.size() - 1 - i]) * u[i];
  return v;
}

/// Greedy condition straight from the definition: for every j, the value of
/// the last j digits is below U_j.
inline bool greedy(const Terms& u, const std::vector<Digit>& w) {
  for (std::size_t j = 1; j <= w.size(); ++j) {
    std::int64_t suffix = 0;
    for (std::size_t i = 0; i < j; ++i) suffix += static_cast<std::int64_t>(w[w.size() - 1 - i]) * u[i];
    if (suffix >= u[j]) return false;
  }
  return true;
}

inline std::int64_t mod(std::int64_t x, std::int64_t m) { return ((x % m) + m) % m; }

/// All words of length exactly len over {0..alphabet-1}, lexicographic.
inline std::vector<std::vector<Digit>> all_words(std::uint32_t alphabet, std::size_t len) {
  std::vector<std::vector<Digit>> out;
  std::vector<Digit> w(len, 0);
  while (true) {
    out.push_back(w);
    std::size_t i = len;
    while (i > 0 && w[i - 1] + 1 == alphabet) w[--i] = 0;
    if (i == 0) break;
    ++w[i - 1];
  }
  return out;
}

/// Greedy representation by search: the radix-least greedy word of value n
/// without a leading zero.
inline std::vector<Digit> rep_by_search(const Terms& u, std::uint32_t alphabet, std::int64_t n) {
  if (n == 0) return {};
  for (std::size_t len = 1; len + 1 < u.size(); ++len) {
    for (const auto& w : all_words(alphabet, len)) {
      if (w[0] != 0 && value(u, w) == n && greedy(u, w)) return w;
    }
  }
  return {99};
}

/// Minimal p with s_{n+p} = s_n for all n in [0, horizon) (pure periodicity).
inline std::size_t pure_period(const Terms& u, std::int64_t m, std::size_t horizon) {
  for (std::size_t p = 1; p + horizon <= u.size(); ++p) {
    bool ok = true;
    for (std::size_t n = 0; n < horizon && ok; ++n) ok = mod(u[n], m) == mod(u[n + p], m);
    if (ok) return p;
  }
  return 0;
}

/// Number of distinct non-empty residuals of L restricted to suffixes of
/// length <= suffix_len, over prefixes of length <= prefix_len. A lower bound
/// on the minimal trim automaton size that is exact once both lengths are
/// large enough.
template <typename InLanguage>
std::size_t residual_count(std::uint32_t alphabet, std::size_t prefix_len, std::size_t suffix_len,
                           InLanguage&& in_language) {
  std::vector<std::vector<Digit>> suffixes;
  for (std::size_t l = 0; l <= suffix_len; ++l) {
    for (auto& w : all_words(alphabet, l)) suffixes.push_back(std::move(w));
  }
  std::set<std::vector<bool>> residuals;
  for (std::size_t l = 0; l <= prefix_len; ++l) {
    for (const auto& p : all_words(alphabet, l)) {
      std::vector<bool> sig;
      sig.reserve(suffixes.size());
      bool any = false;
      for (const auto& s : suffixes) {
        std::vector<Digit> w = p;
        w.insert(w.end(), s.begin(), s.end());
        const bool in = in_language(w);
        any = any || in;
        sig.push_back(in);
      }
      if (any) residuals.insert(std::move(sig));
    }
  }
  return residuals.size();
}

/// |{H x mod m : x in (Z/m)^n}| by enumeration, for small integer matrices.
inline std::size_t image_size(const std::vector<std::vector<std::int64_t>>& h, std::int64_t m) {
  const std::size_t n = h.front().size();
  std::set<std::vector<std::int64_t>> image;
  std::vector<std::int64_t> x(n, 0);
  while (true) {
    std::vector<std::int64_t> b(h.size(), 0);
    for (std::size_t i = 0; i < h.size(); ++i) {
      for (std::size_t j = 0; j < n; ++j) b[i] = mod(b[i] + mod(h[i][j], m) * x[j], m);
    }
    image.insert(std::move(b));
    std::size_t j = 0;
    while (j < n && ++x[j] == m) x[j++] = 0;
    if (j == n) break;
  }
  return image.size();
}

inline std::vector<std::vector<std::int64_t>> hankel(const Terms& u, std::size_t t) {
  std::vector<std::vector<std::int64_t>> h(t, std::vector<std::int64_t>(t));
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < t; ++j) h[i][j] = u[i + j];
  }
  return h;
}

/// Determinant by cofactor expansion.
inline std::int64_t det(const std::vector<std::vector<std::int64_t>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  std::int64_t total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<std::int64_t>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<std::int64_t> row;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != c) row.push_back(a[r][j]);
      }
      minor.push_back(std::move(row));
    }
    total += (c % 2 ? -1 : 1) * a[0][c] * det(minor);
  }
  return total;
}

/// Smith invariants from determinantal divisors: D_i = gcd of all i x i
/// minors, d_i = D_i / D_{i-1}.
inline std::vector<std::int64_t> smith_by_minors(const std::vector<std::vector<std::int64_t>>& a) {
  const std::size_t n = a.size();
  const std::size_t cols = a.front().size();
  const std::size_t r = std::min(n, cols);
  std::vector<std::int64_t> divisors{1};
  for (std::size_t size = 1; size <= r; ++size) {
    std::int64_t g = 0;
    std::vector<bool> row_pick(n, false), col_pick(cols, false);
    std::fill(row_pick.end() - static_cast<std::ptrdiff_t>(size), row_pick.end(), true);
    do {
      std::fill(col_pick.begin(), col_pick.end(), false);
      std::fill(col_pick.end() - static_cast<std::ptrdiff_t>(size), col_pick.end(), true);
      do {
        std::vector<std::vector<std::int64_t>> minor;
        for (std::size_t i = 0; i < n; ++i) {
          if (!row_pick[i]) continue;
          std::vector<std::int64_t> row;
          for (std::size_t j = 0; j < cols; ++j) {
            if (col_pick[j]) row.push_back(a[i][j]);
          }
          minor.push_back(std::move(row));
        }
        g = std::gcd(g, det(minor));
      } while (std::next_permutation(col_pick.begin(), col_pick.end()));
    } while (std::next_permutation(row_pick.begin(), row_pick.end()));
    divisors.push_back(g);
  }
  std::vector<std::int64_t> out;
  for (std::size_t i = 1; i <= r; ++i) {
    out.push_back(divisors[i - 1] == 0 ? 0 : divisors[i] / divisors[i - 1]);
  }
  return out;
}

/// Random partial DFA; roughly `density` of the transitions are defined.
inline Dfa random_dfa(std::mt19937& rng, std::size_t states, std::uint32_t alphabet, double density = 0.8,
                      double final_ratio = 0.4) {
  std::uniform_int_distribution<std::size_t> pick(0, states - 1);
  std::bernoulli_distribution defined(density);
  std::bernoulli_distribution final(final_ratio);
  Dfa a(states, alphabet, 0);
  for (State q = 0; q < states; ++q) {
    a.set_final(q, final(rng));
    for (Digit d = 0; d < alphabet; ++d) {
      if (defined(rng)) a.set_transition(q, d, static_cast<State>(pick(rng)));
    }
  }
  return a;
}

inline Word random_word(std::mt19937& rng, std::uint32_t alphabet, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<Digit> digit(0, alphabet - 1);
  Word w;
  const std::size_t l = len(rng);
  for (std::size_t i = 0; i < l; ++i) w.digits.push_back(digit(rng));
  return w;
}

/// Acceptance straight from a list of transitions, ignoring Dfa::accepts.
inline bool accepts_by_table(const Dfa& a, const Word& w) {
  std::int64_t q = a.initial();
  for (Digit d : w.digits) {
    q = a.raw_next(static_cast<State>(q), d);
    if (q < 0) return false;
  }
  return a.is_final(static_cast<State>(q));
}

}  // namespace numera::oracle

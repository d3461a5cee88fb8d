#include "numera/hankel.hpp"

#include <algorithm>

#include "numera/error.hpp"

namespace numera {

namespace {

constexpr std::uint64_t kMaxModulus = 1ULL << 32;

void require_modulus(std::uint64_t m) {
  if (m < 2) throw InputError("modulus must be at least 2");
  if (m > kMaxModulus) throw InputError("modulus above 2^32 is not supported");
}

BigInt abs_big(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

BigInt gcd_big(const BigInt& a, const BigInt& b) {
  BigInt x = abs_big(a);
  BigInt y = abs_big(b);
  while (y != 0) {
    BigInt r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

BigInt mod_big(const BigInt& x, const BigInt& m) {
  BigInt r = x % m;
  if (r < 0) r += m;
  return r;
}

// Inverse of a modulo m; a and m coprime, m >= 1.
BigInt inverse_mod(const BigInt& a, const BigInt& m) {
  if (m == 1) return 0;
  BigInt old_r = mod_big(a, m), r = m;
  BigInt old_s = 1, s = 0;
  while (r != 0) {
    const BigInt q = old_r / r;
    BigInt tmp = old_r - q * r;
    old_r = std::move(r);
    r = std::move(tmp);
    tmp = old_s - q * s;
    old_s = std::move(s);
    s = std::move(tmp);
  }
  if (old_r != 1) throw InternalError("inverse_mod on non-coprime arguments");
  return mod_big(old_s, m);
}

std::uint64_t checked_power(std::uint64_t base, std::size_t exp, std::uint64_t cap) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (out > cap / base) return cap + 1;
    out *= base;
  }
  return out;
}

}  // namespace

// IntMatrix -----------------------------------------------------------------

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw InputError("ragged matrix literal");
    for (long long v : row) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1;
  return out;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row(std::size_t dst, std::size_t src, const BigInt& factor) {
  if (factor == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
}

void IntMatrix::add_col(std::size_t dst, std::size_t src, const BigInt& factor) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw InputError("matrix dimension mismatch");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      if (a(i, l) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, l) * b(l, j);
    }
  }
  return out;
}

// Determinant ---------------------------------------------------------------

BigInt determinant(const IntMatrix& input) {
  if (input.rows() != input.cols()) throw InputError("determinant of a non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return 1;
  IntMatrix a = input;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// Smith normal form ---------------------------------------------------------

SmithDecomposition smith_decompose(const IntMatrix& input) {
  IntMatrix a = input;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  IntMatrix left = IntMatrix::identity(rows);
  IntMatrix right = IntMatrix::identity(cols);
  const std::size_t diag = std::min(rows, cols);

  for (std::size_t t = 0; t < diag; ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::optional<std::pair<std::size_t, std::size_t>> pivot;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (a(i, j) != 0 && (!pivot || abs_big(a(i, j)) < abs_big(a(pivot->first, pivot->second)))) {
            pivot = {i, j};
          }
        }
      }
      if (!pivot) break;
      a.swap_rows(t, pivot->first);
      left.swap_rows(t, pivot->first);
      a.swap_cols(t, pivot->second);
      right.swap_cols(t, pivot->second);

      bool residue_left = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        const BigInt q = a(i, t) / a(t, t);
        a.add_row(i, t, -q);
        left.add_row(i, t, -q);
        residue_left = residue_left || a(i, t) != 0;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        const BigInt q = a(t, j) / a(t, t);
        a.add_col(j, t, -q);
        right.add_col(j, t, -q);
        residue_left = residue_left || a(t, j) != 0;
      }
      if (residue_left) continue;

      // The pivot must divide the whole trailing block.
      std::optional<std::size_t> offender;
      for (std::size_t i = t + 1; i < rows && !offender; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a(i, j) % a(t, t) != 0) {
            offender = i;
            break;
          }
        }
      }
      if (!offender) break;
      a.add_row(t, *offender, 1);
      left.add_row(t, *offender, 1);
    }
    if (a(t, t) < 0) {
      a.add_row(t, t, -2);
      left.add_row(t, t, -2);
    }
  }

  SmithDecomposition out{std::move(left), std::move(right), {}};
  for (std::size_t t = 0; t < diag; ++t) out.invariants.push_back(a(t, t));
  return out;
}

std::vector<BigInt> smith_normal_form(const IntMatrix& a) { return smith_decompose(a).invariants; }

// Hankel analysis -----------------------------------------------------------

IntMatrix hankel_matrix(const NumerationSystem& system, std::size_t t) {
  if (t == 0) throw InputError("Hankel matrix size must be positive");
  const std::vector<BigInt> u = system.terms(2 * t - 1);
  IntMatrix h(t, t);
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < t; ++j) h(i, j) = u[i + j];
  }
  return h;
}

namespace {

std::vector<BigInt> determinant_profile(const NumerationSystem& system) {
  std::vector<BigInt> dets;
  for (std::size_t t = 1; t <= system.order(); ++t) dets.push_back(determinant(hankel_matrix(system, t)));
  return dets;
}

std::size_t k_from_profile(const std::vector<BigInt>& dets, std::uint64_t m) {
  for (std::size_t t = dets.size(); t > 0; --t) {
    if (mod_nonneg(dets[t - 1], m) != 0) return t;
  }
  throw InternalError("det H_1 = U_0 = 1 cannot vanish modulo m");
}

}  // namespace

std::size_t k_um(const NumerationSystem& system, std::uint64_t m) {
  require_modulus(m);
  return k_from_profile(determinant_profile(system), m);
}

BigInt image_count_smith(const IntMatrix& a, std::uint64_t m) {
  require_modulus(m);
  BigInt count = 1;
  const BigInt mod = m;
  for (const BigInt& d : smith_normal_form(a)) count *= mod / gcd_big(d, mod);
  // Columns beyond the diagonal contribute nothing; rows beyond it only zeros.
  return count;
}

std::uint64_t image_count_brute_force(const IntMatrix& a, std::uint64_t m, std::uint64_t budget) {
  require_modulus(m);
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  if (checked_power(m, cols, budget) > budget || checked_power(m, rows, budget) > budget) {
    throw InputError("brute-force image enumeration exceeds the budget");
  }
  std::vector<std::uint64_t> entries(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) entries[i * cols + j] = mod_nonneg(a(i, j), m);
  }
  std::vector<char> hit(checked_power(m, rows, budget), 0);
  std::vector<std::uint64_t> x(cols, 0);
  std::uint64_t count = 0;
  while (true) {
    std::uint64_t code = 0;
    for (std::size_t i = rows; i-- > 0;) {
      std::uint64_t b = 0;
      for (std::size_t j = 0; j < cols; ++j) b = (b + entries[i * cols + j] * x[j]) % m;
      code = code * m + b;
    }
    if (!hit[code]) {
      hit[code] = 1;
      ++count;
    }
    std::size_t j = 0;
    while (j < cols && ++x[j] == m) x[j++] = 0;
    if (j == cols) break;
  }
  return count;
}

BigInt image_count_at_order(const NumerationSystem& system, std::uint64_t m, std::size_t l,
                            ImageCountMethod method, std::uint64_t budget) {
  require_modulus(m);
  const IntMatrix h = hankel_matrix(system, l);
  const bool fits = checked_power(m, l, budget) <= budget;
  switch (method) {
    case ImageCountMethod::BruteForce:
      return image_count_brute_force(h, m, budget);
    case ImageCountMethod::Smith:
      return image_count_smith(h, m);
    case ImageCountMethod::Auto:
      break;
  }
  return fits ? BigInt(image_count_brute_force(h, m, budget)) : image_count_smith(h, m);
}

std::optional<std::vector<std::uint64_t>> mod_recurrence_coeffs(const NumerationSystem& system,
                                                                std::uint64_t m,
                                                                std::uint64_t budget) {
  require_modulus(m);
  const std::size_t k = k_um(system, m);
  const IntMatrix h = hankel_matrix(system, k);
  const std::vector<BigInt> u = system.terms(2 * k);
  const SmithDecomposition snf = smith_decompose(h);
  const BigInt mod = m;

  // left * h * right = D, so h c = r  <=>  D y = left r with c = right y.
  std::vector<BigInt> rhs(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) rhs[i] += snf.left(i, j) * u[k + j];
    rhs[i] = mod_big(rhs[i], mod);
  }
  std::vector<BigInt> base(k), step(k);
  std::vector<std::uint64_t> choices(k);
  BigInt total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    const BigInt g = gcd_big(snf.invariants[i], mod);
    if (rhs[i] % g != 0) return std::nullopt;
    const BigInt reduced_mod = mod / g;
    base[i] = mod_big((rhs[i] / g) * inverse_mod(snf.invariants[i] / g, reduced_mod), reduced_mod);
    step[i] = reduced_mod;
    choices[i] = g.convert_to<std::uint64_t>();
    total *= g;
  }
  if (total > budget) return std::nullopt;

  const ResiduePeriod period = residue_period(system, m);
  const std::size_t checks = period.phases() + k;
  auto validates = [&](const std::vector<std::uint64_t>& c) {
    for (std::size_t n = 0; n <= checks; ++n) {
      std::uint64_t acc = 0;
      for (std::size_t i = 0; i < k; ++i) acc = (acc + c[i] * period.at(n + i) % m) % m;
      if (acc != period.at(n + k)) return false;
    }
    return true;
  };

  std::optional<std::vector<std::uint64_t>> best;
  std::vector<std::uint64_t> pick(k, 0);
  while (true) {
    std::vector<std::uint64_t> c(k);
    for (std::size_t i = 0; i < k; ++i) {
      BigInt acc = 0;
      for (std::size_t j = 0; j < k; ++j) acc += snf.right(i, j) * (base[j] + step[j] * pick[j]);
      c[i] = mod_nonneg(acc, m);
    }
    if (validates(c) && (!best || c < *best)) best = std::move(c);
    std::size_t j = 0;
    while (j < k && ++pick[j] == choices[j]) pick[j++] = 0;
    if (j == k) break;
  }
  return best;
}

HankelAnalysis analyze_hankel(const NumerationSystem& system, std::uint64_t m, std::uint64_t budget) {
  require_modulus(m);
  HankelAnalysis out;
  out.modulus = m;
  out.det_profile = determinant_profile(system);
  out.k = k_from_profile(out.det_profile, m);
  out.hankel = hankel_matrix(system, out.k);
  out.smith_invariants = smith_normal_form(out.hankel);
  out.s_um = 1;
  for (const BigInt& d : out.smith_invariants) out.s_um *= BigInt(m) / gcd_big(d, BigInt(m));

  for (std::size_t t = 1; t < out.k; ++t) {
    if (mod_nonneg(out.det_profile[t - 1], m) == 0) {
      out.notes.push_back("det H_" + std::to_string(t) + " vanishes mod m below k; k is the largest non-vanishing order");
    }
  }

  if (checked_power(m, out.k, budget) <= budget) {
    out.brute_force_image = image_count_brute_force(out.hankel, m, budget);
    if (BigInt(*out.brute_force_image) != out.s_um) {
      throw InternalError("Smith image count " + out.s_um.str() + " disagrees with enumeration " +
                          std::to_string(*out.brute_force_image));
    }
  } else {
    out.notes.push_back("m^k exceeds the enumeration budget; S taken from Smith invariants only");
  }

  out.mod_recurrence = mod_recurrence_coeffs(system, m, budget);
  if (!out.mod_recurrence) {
    out.notes.push_back("no validated mod-m recurrence of length k found; constructions use length K");
  }
  return out;
}

BigInt s_um(const NumerationSystem& system, std::uint64_t m) { return analyze_hankel(system, m).s_um; }

}  // namespace numera

#include "numera/numeration.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "numera/error.hpp"

namespace numera {

namespace {

BigInt ceil_div(const BigInt& a, const BigInt& b) { return (a + b - 1) / b; }

}  // namespace

// Word ----------------------------------------------------------------------

char digit_char(Digit d) {
  if (d < 10) return static_cast<char>('0' + d);
  if (d < 36) return static_cast<char>('a' + (d - 10));
  throw InputError("digit " + std::to_string(d) + " has no single-character spelling");
}

Word Word::parse(std::string_view text) {
  Word w;
  w.digits.reserve(text.size());
  for (char c : text) {
    if (c >= '0' && c <= '9') {
      w.digits.push_back(static_cast<Digit>(c - '0'));
    } else if (c >= 'a' && c <= 'z') {
      w.digits.push_back(static_cast<Digit>(c - 'a' + 10));
    } else {
      throw InputError(std::string("invalid digit character '") + c + "'");
    }
  }
  return w;
}

std::string Word::str() const {
  std::string s;
  s.reserve(digits.size());
  for (Digit d : digits) s.push_back(digit_char(d));
  return s;
}

bool radix_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.digits < b.digits;
}

// NumerationSystem ----------------------------------------------------------

std::vector<BigInt> generate_terms(std::span<const BigInt> coefficients,
                                   std::span<const BigInt> initial_terms, std::size_t count) {
  const std::size_t order = coefficients.size();
  std::vector<BigInt> out(initial_terms.begin(), initial_terms.end());
  out.reserve(std::max(count, order));
  while (out.size() < count) {
    const std::size_t base = out.size() - order;
    BigInt next = 0;
    for (std::size_t i = 0; i < order; ++i) next += coefficients[i] * out[base + i];
    out.push_back(std::move(next));
  }
  out.resize(count);
  return out;
}

NumerationSystem::NumerationSystem(std::vector<BigInt> coefficients,
                                   std::vector<BigInt> initial_terms,
                                   std::optional<std::uint32_t> alphabet_bound, std::string name,
                                   std::size_t validation_horizon)
    : coefficients_(std::move(coefficients)), name_(std::move(name)) {
  if (coefficients_.empty()) throw InvalidSystem("recurrence needs at least one coefficient");
  if (initial_terms.size() != coefficients_.size()) {
    throw InvalidSystem("expected " + std::to_string(coefficients_.size()) +
                        " initial terms, got " + std::to_string(initial_terms.size()));
  }
  if (initial_terms.front() != 1) throw InvalidSystem("U_0 must be 1");

  const std::size_t count = std::max(validation_horizon, order()) + 1;
  terms_ = generate_terms(coefficients_, initial_terms, count);
  for (std::size_t n = 0; n + 1 < terms_.size(); ++n) {
    if (terms_[n] <= 0 || terms_[n + 1] <= terms_[n]) {
      throw InvalidSystem("sequence is not positive and increasing at n=" + std::to_string(n) +
                          " (U_n=" + terms_[n].str() + ", U_{n+1}=" + terms_[n + 1].str() + ")");
    }
  }

  const AlphabetBound computed = compute_alphabet_bound(*this, count - 1);
  alphabet_stable_ = computed.stable;
  if (alphabet_bound) {
    if (*alphabet_bound < computed.value) {
      throw InvalidSystem("alphabet bound " + std::to_string(*alphabet_bound) +
                          " is below the observed ratio ceiling " +
                          std::to_string(computed.value));
    }
    alphabet_bound_ = *alphabet_bound;
  } else {
    alphabet_bound_ = computed.value;
  }
}

BigInt NumerationSystem::term(std::size_t n) const {
  if (n < terms_.size()) return terms_[n];
  const std::size_t k = order();
  std::vector<BigInt> window(terms_.end() - static_cast<std::ptrdiff_t>(k), terms_.end());
  for (std::size_t i = terms_.size(); i <= n; ++i) {
    BigInt next = 0;
    for (std::size_t j = 0; j < k; ++j) next += coefficients_[j] * window[j];
    if (next <= window.back()) {
      throw InvalidSystem("sequence stops increasing at n=" + std::to_string(i));
    }
    std::rotate(window.begin(), window.begin() + 1, window.end());
    window.back() = std::move(next);
  }
  return window.back();
}

std::vector<BigInt> NumerationSystem::terms(std::size_t count) const {
  if (count <= terms_.size()) return {terms_.begin(), terms_.begin() + static_cast<std::ptrdiff_t>(count)};
  std::vector<BigInt> out = terms_;
  out.reserve(count);
  while (out.size() < count) out.push_back(term(out.size()));
  return out;
}

double NumerationSystem::dominant_root_estimate() const {
  const auto& a = terms_[terms_.size() - 2];
  const auto& b = terms_.back();
  // Scale down to keep the conversion in range.
  const BigInt scale = BigInt(1) << 52;
  return static_cast<double>(b * scale / a) / static_cast<double>(scale);
}

AlphabetBound compute_alphabet_bound(const NumerationSystem& system, std::size_t horizon) {
  horizon = std::max(horizon, system.order());
  const std::vector<BigInt> u = system.terms(horizon + 1);
  BigInt best = 0;
  std::size_t best_at = 0;
  for (std::size_t n = 0; n < horizon; ++n) {
    BigInt c = ceil_div(u[n + 1], u[n]);
    if (c > best) {
      best = std::move(c);
      best_at = n;
    }
  }
  return {best.convert_to<std::uint32_t>(), best_at < horizon / 2};
}

// Representations -----------------------------------------------------------

Word rep(const NumerationSystem& system, const BigInt& n) {
  if (n < 0) throw InputError("rep of a negative integer");
  Word w;
  if (n == 0) return w;
  std::size_t length = 0;
  while (system.term(length) <= n) ++length;
  BigInt rest = n;
  w.digits.reserve(length);
  for (std::size_t i = length; i-- > 0;) {
    const BigInt u = system.term(i);
    const BigInt d = rest / u;
    if (d >= system.alphabet_bound()) {
      throw InvalidSystem("greedy digit " + d.str() + " exceeds alphabet bound " +
                          std::to_string(system.alphabet_bound()));
    }
    rest -= d * u;
    w.digits.push_back(d.convert_to<Digit>());
  }
  return w;
}

BigInt val(const NumerationSystem& system, const Word& w) {
  const std::vector<BigInt> u = system.terms(w.size());
  BigInt total = 0;
  const std::size_t len = w.size();
  for (std::size_t i = 0; i < len; ++i) total += BigInt(w.digits[len - 1 - i]) * u[i];
  return total;
}

bool is_greedy(const NumerationSystem& system, const Word& w) {
  const std::size_t len = w.size();
  const std::vector<BigInt> u = system.terms(len + 1);
  BigInt suffix = 0;
  for (std::size_t j = 1; j <= len; ++j) {
    suffix += BigInt(w.digits[len - j]) * u[j - 1];
    if (suffix >= u[j]) return false;
  }
  return true;
}

std::optional<std::vector<std::uint64_t>> small_terms(const NumerationSystem& system,
                                                      std::size_t count) {
  const BigInt limit = BigInt(1) << 62;
  std::vector<std::uint64_t> out;
  out.reserve(count);
  for (const BigInt& t : system.terms(count)) {
    if (t > limit) return std::nullopt;
    out.push_back(t.convert_to<std::uint64_t>());
  }
  return out;
}

// Residues ------------------------------------------------------------------

std::uint64_t mod_nonneg(const BigInt& x, std::uint64_t m) {
  BigInt r = x % m;
  if (r < 0) r += m;
  return r.convert_to<std::uint64_t>();
}

ResiduePeriod residue_period(const NumerationSystem& system, std::uint64_t m) {
  if (m < 2) throw InputError("modulus must be at least 2");
  if (m > (1ULL << 32)) throw InputError("modulus above 2^32 is not supported");
  const std::size_t k = system.order();
  std::vector<std::uint64_t> coeff(k);
  for (std::size_t i = 0; i < k; ++i) coeff[i] = mod_nonneg(system.coefficients()[i], m);

  std::vector<std::uint64_t> seq;
  for (const BigInt& t : system.initial_terms()) seq.push_back(mod_nonneg(t, m));

  std::map<std::vector<std::uint64_t>, std::size_t> seen;
  for (std::size_t n = 0;; ++n) {
    while (seq.size() < n + k) {
      const std::size_t base = seq.size() - k;
      std::uint64_t acc = 0;
      for (std::size_t i = 0; i < k; ++i) acc = (acc + coeff[i] * seq[base + i] % m) % m;
      seq.push_back(acc);
    }
    std::vector<std::uint64_t> window(seq.begin() + static_cast<std::ptrdiff_t>(n),
                                      seq.begin() + static_cast<std::ptrdiff_t>(n + k));
    auto [it, inserted] = seen.emplace(std::move(window), n);
    if (!inserted) {
      ResiduePeriod out;
      out.modulus = m;
      out.preperiod = it->second;
      out.period = n - it->second;
      out.residues.assign(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(n));
      return out;
    }
  }
}

// Presets -------------------------------------------------------------------

NumerationSystem fibonacci_system() { return {{1, 1}, {1, 2}, std::nullopt, "fibonacci"}; }

NumerationSystem lbonacci_system(std::uint32_t l) {
  if (l < 2) throw InputError("l-bonacci needs l >= 2");
  std::vector<BigInt> coeff(l, BigInt(1));
  std::vector<BigInt> init;
  for (std::uint32_t i = 0; i < l; ++i) init.push_back(BigInt(1) << i);
  return {std::move(coeff), std::move(init), std::nullopt, "lbonacci:" + std::to_string(l)};
}

NumerationSystem sqrt2plus1_system() { return {{1, 2}, {1, 3}, std::nullopt, "sqrt2plus1"}; }

}  // namespace numera

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace numera {

using BigInt = boost::multiprecision::cpp_int;
using Digit = std::uint32_t;

/// A finite digit string, most significant digit first.
struct Word {
  std::vector<Digit> digits;

  Word() = default;
  explicit Word(std::vector<Digit> d) : digits(std::move(d)) {}

  /// Parses "0".."9" then "a".."z" as digits 0..35. Throws InputError otherwise.
  static Word parse(std::string_view text);

  [[nodiscard]] std::string str() const;
  [[nodiscard]] std::size_t size() const noexcept { return digits.size(); }
  [[nodiscard]] bool empty() const noexcept { return digits.empty(); }

  Word& append(Digit d) {
    digits.push_back(d);
    return *this;
  }
  Word& append(const Word& w) {
    digits.insert(digits.end(), w.digits.begin(), w.digits.end());
    return *this;
  }
  [[nodiscard]] Word concat(const Word& w) const {
    Word out = *this;
    out.append(w);
    return out;
  }

  friend bool operator==(const Word&, const Word&) = default;
};

/// Radix (shortlex) order: shorter words first, then lexicographic.
bool radix_less(const Word& a, const Word& b);

char digit_char(Digit d);

struct AlphabetBound {
  std::uint32_t value = 0;
  /// True if the maximal ratio ceiling was reached in the first half of the horizon.
  bool stable = false;
};

/// A linear numeration system U_{n+K} = a_{K-1} U_{n+K-1} + ... + a_0 U_n.
///
/// Construction validates U_0 = 1 and strict growth over a prefix of
/// `validation_horizon` terms and fixes the alphabet bound C_U. Objects are
/// immutable; the prefix is cached at construction so lookups are const and
/// thread-safe.
class NumerationSystem {
 public:
  static constexpr std::size_t kDefaultHorizon = 200;

  NumerationSystem(std::vector<BigInt> coefficients, std::vector<BigInt> initial_terms,
                   std::optional<std::uint32_t> alphabet_bound = std::nullopt,
                   std::string name = {}, std::size_t validation_horizon = kDefaultHorizon);

  /// a_0 first.
  [[nodiscard]] const std::vector<BigInt>& coefficients() const noexcept { return coefficients_; }
  [[nodiscard]] std::span<const BigInt> initial_terms() const noexcept {
    return {terms_.data(), order()};
  }
  /// Recurrence length K.
  [[nodiscard]] std::size_t order() const noexcept { return coefficients_.size(); }
  [[nodiscard]] std::uint32_t alphabet_bound() const noexcept { return alphabet_bound_; }
  /// False when C_U was supplied by the caller or the horizon heuristic did not settle.
  [[nodiscard]] bool alphabet_bound_stable() const noexcept { return alphabet_stable_; }
  [[nodiscard]] const std::string& name() const noexcept { return name_; }

  /// U_n, exact.
  [[nodiscard]] BigInt term(std::size_t n) const;
  /// U_0 .. U_{count-1}.
  [[nodiscard]] std::vector<BigInt> terms(std::size_t count) const;
  /// Diagnostic only: U_{n+1} / U_n at the end of the cached prefix.
  [[nodiscard]] double dominant_root_estimate() const;

 private:
  std::vector<BigInt> coefficients_;
  std::vector<BigInt> terms_;
  std::uint32_t alphabet_bound_ = 0;
  bool alphabet_stable_ = false;
  std::string name_;
};

/// Generates terms of the recurrence without any validation.
std::vector<BigInt> generate_terms(std::span<const BigInt> coefficients,
                                   std::span<const BigInt> initial_terms, std::size_t count);

/// max_{n < horizon} ceil(U_{n+1} / U_n).
AlphabetBound compute_alphabet_bound(const NumerationSystem& system,
                                     std::size_t horizon = NumerationSystem::kDefaultHorizon);

/// Greedy representation; rep(0) is the empty word.
Word rep(const NumerationSystem& system, const BigInt& n);

/// sum w_i U_i with w_0 the last digit.
BigInt val(const NumerationSystem& system, const Word& w);

/// Membership in 0* rep_U(N): every suffix value is below the next term.
bool is_greedy(const NumerationSystem& system, const Word& w);

/// Calls visit(w) for every word of length `len` over {0..alphabet-1} in
/// lexicographic order. Stops early and returns false when visit returns false.
template <typename Visit>
bool for_each_word(std::uint32_t alphabet, std::size_t len, Visit&& visit) {
  Word w(std::vector<Digit>(len, 0));
  while (true) {
    if (!visit(static_cast<const Word&>(w))) return false;
    std::size_t i = len;
    while (i > 0 && w.digits[i - 1] + 1 == alphabet) w.digits[--i] = 0;
    if (i == 0) return true;
    ++w.digits[i - 1];
  }
}

/// U_0 .. U_{count-1} as machine integers, or nullopt if any exceeds 2^62.
std::optional<std::vector<std::uint64_t>> small_terms(const NumerationSystem& system,
                                                      std::size_t count);

/// Preperiod/period of (U_n mod m).
struct ResiduePeriod {
  std::uint64_t modulus = 0;
  std::size_t preperiod = 0;
  std::size_t period = 0;
  /// U_n mod m for n < preperiod + period.
  std::vector<std::uint64_t> residues;

  [[nodiscard]] bool purely_periodic() const noexcept { return preperiod == 0; }
  [[nodiscard]] std::size_t phases() const noexcept { return preperiod + period; }
  /// U_n mod m for any n.
  [[nodiscard]] std::uint64_t at(std::size_t n) const noexcept {
    if (n < residues.size()) return residues[n];
    return residues[preperiod + (n - preperiod) % period];
  }
};

ResiduePeriod residue_period(const NumerationSystem& system, std::uint64_t m);

/// Reduces x into {0, ..., m-1}.
std::uint64_t mod_nonneg(const BigInt& x, std::uint64_t m);

// Presets -------------------------------------------------------------------

/// U_{n+2} = U_{n+1} + U_n, U = 1, 2.
NumerationSystem fibonacci_system();
/// U_{n+l} = U_{n+l-1} + ... + U_n with U_i = 2^i for i < l. Requires l >= 2.
NumerationSystem lbonacci_system(std::uint32_t l);
/// U_{n+2} = 2 U_{n+1} + U_n, U = 1, 3 (dominant root 1 + sqrt 2).
NumerationSystem sqrt2plus1_system();

}  // namespace numera

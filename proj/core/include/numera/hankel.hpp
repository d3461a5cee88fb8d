#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "numera/numeration.hpp"

namespace numera {

/// Dense integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntMatrix identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  [[nodiscard]] const BigInt& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row(std::size_t dst, std::size_t src, const BigInt& factor);
  /// col[dst] += factor * col[src]
  void add_col(std::size_t dst, std::size_t src, const BigInt& factor);

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

/// Exact determinant by fraction-free (Bareiss) elimination.
BigInt determinant(const IntMatrix& a);

/// left * a * right == diag(invariants), with left/right unimodular,
/// invariants[i] >= 0 and invariants[i] | invariants[i+1].
struct SmithDecomposition {
  IntMatrix left;
  IntMatrix right;
  std::vector<BigInt> invariants;
};

SmithDecomposition smith_decompose(const IntMatrix& a);
std::vector<BigInt> smith_normal_form(const IntMatrix& a);

/// t x t matrix with entry (i, j) = U_{i+j}.
IntMatrix hankel_matrix(const NumerationSystem& system, std::size_t t);

/// Largest t <= K with det H_t not divisible by m.
std::size_t k_um(const NumerationSystem& system, std::uint64_t m);

/// Size of the image of x -> a x over (Z/m)^n, from Smith invariants.
BigInt image_count_smith(const IntMatrix& a, std::uint64_t m);
/// Same, by enumerating all of (Z/m)^n. Requires m^n <= budget.
std::uint64_t image_count_brute_force(const IntMatrix& a, std::uint64_t m,
                                      std::uint64_t budget = 1'000'000);

enum class ImageCountMethod { Auto, BruteForce, Smith };

/// Number of b in (Z/m)^l for which H_l x = b (mod m) is solvable.
BigInt image_count_at_order(const NumerationSystem& system, std::uint64_t m, std::size_t l,
                            ImageCountMethod method = ImageCountMethod::Auto,
                            std::uint64_t budget = 1'000'000);

struct HankelAnalysis {
  std::uint64_t modulus = 0;
  std::size_t k = 0;
  IntMatrix hankel;
  std::vector<BigInt> smith_invariants;
  BigInt s_um = 0;
  /// Brute-force image size, when m^k fits the budget.
  std::optional<std::uint64_t> brute_force_image;
  /// c_0..c_{k-1} with U_{n+k} = sum c_i U_{n+i} (mod m) for all n.
  std::optional<std::vector<std::uint64_t>> mod_recurrence;
  /// det H_t for t = 1..K.
  std::vector<BigInt> det_profile;
  std::vector<std::string> notes;
};

/// k_{U,m}, Smith invariants and S_{U,m}; cross-checks S against brute force
/// when m^k <= budget and throws InternalError on disagreement.
HankelAnalysis analyze_hankel(const NumerationSystem& system, std::uint64_t m,
                              std::uint64_t budget = 1'000'000);

BigInt s_um(const NumerationSystem& system, std::uint64_t m);

/// Lexicographically smallest validated coefficients of a length-k recurrence
/// for (U_n mod m), or nullopt when no candidate validates within the budget.
std::optional<std::vector<std::uint64_t>> mod_recurrence_coeffs(const NumerationSystem& system,
                                                                std::uint64_t m,
                                                                std::uint64_t budget = 1'000'000);

}  // namespace numera

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fewocc/bigint.hpp"
#include "fewocc/cnf.hpp"

namespace fewocc {

/// log2(e), written "log e" in the bounds below.
inline constexpr double kLog2E = 1.4426950408889634;
/// α = log_3 4 − 1 from the Savický–Sgall upper bound O(2^k / k^α). Kept as a
/// symbolic constant only: the bound's multiplicative constant is unknown.
inline constexpr double kSavickySgallAlpha = 0.26185950714291484;

inline constexpr std::size_t kDefaultClauseCap = std::size_t{1} << 22;

/// `lhs <= rhs` for inequalities involving log e, evaluated in double. Values
/// within relative 1e-9 of equality count as NOT satisfied.
bool conservative_leq(double lhs, double rhs);

/// Block structure of the product construction: u = ⌊k/l⌋ blocks of l
/// variables plus a leftover block of v = k − l·u.
struct Lemma1Params {
  unsigned k = 0;
  unsigned l = 0;
  unsigned u = 0;
  unsigned v = 0;

  /// Throws unless 1 <= l <= k.
  static Lemma1Params make(unsigned k, unsigned l);
};

/// The staged construction: stage j in 0..l has incomplete width
/// k_j = k − l + j and (for j >= 1) u_j = ⌊k_j / (l − j + 1)⌋ x-blocks.
struct Lemma2Params {
  unsigned k = 0;
  unsigned l = 0;
  std::vector<unsigned> stage_width;   // k_j
  std::vector<unsigned> stage_blocks;  // u_j; stage_blocks[0] is unused (0)
  BigInt s;                            // 2^(k − l + 1)

  /// Throws unless 0 <= l <= k and l·2^l <= log e·(k − 2l).
  static Lemma2Params make(unsigned k, unsigned l);
};

/// l·2^l <= log e·(k − 2l), with the conservative tie rule.
bool lemma2_condition(unsigned k, unsigned l);

struct ConstructionStats {
  BigInt n;
  BigInt m;
  BigInt max_occurrence;
  BigInt incomplete_size;  // |F′| relative to the target width k

  bool operator==(const ConstructionStats&) const = default;
};

/// Closed-form statistics of the product construction, no materialization:
/// n = k + u(k − l), m = 2^v(2^l − 1)^u + u·2^(k−l),
/// max occurrence = 2^v(2^l − 1)^u + 2^(k−l).
ConstructionStats lemma1_stats(const Lemma1Params& p);

struct BuildOptions {
  std::size_t clause_cap = kDefaultClauseCap;
  /// Share one copy of each repeated sub-formula instead of fresh copies.
  /// Fewer clauses and variables; occurrences of the shared part grow.
  bool compact = false;
};

struct BuiltFormula {
  Formula formula;
  ConstructionStats stats;  // measured on `formula`
};

/// The product construction F = F₀ ∪ F₁ ∪ … ∪ F_u with
///   F₀  = K(z) × K⁻(x⁽¹⁾) × … × K⁻(x⁽ᵘ⁾)
///   F_i = K(y⁽ⁱ⁾) × {{x⁽ⁱ⁾}}.
/// Variable layout: z = 1..v, then x⁽¹⁾..x⁽ᵘ⁾ (l each), then y⁽¹⁾..y⁽ᵘ⁾
/// (k − l each; a single shared y block when compact).
BuiltFormula lemma1_build(unsigned k, unsigned l, const BuildOptions& opts = {});

/// Stages F₀..F_l of the staged construction. F₀ = K on k − l variables; F_j
/// is F_{j,0} = K(z) × ∏ K⁻(x⁽ⁱ⁾) united with, for each x-block, a fresh copy
/// of F_{j−1} whose incomplete clauses are extended by the all-positive
/// x-block clause. Layout of stage j: z first, then the u_j x-blocks, then
/// the copies in order.
std::vector<BuiltFormula> lemma2_build(unsigned k, unsigned l, const BuildOptions& opts = {});

/// Predicted clause count of every stage (honours opts.compact).
std::vector<BigInt> lemma2_predicted_clauses(const Lemma2Params& p, bool compact);

enum class LScheme { Lemma1Corollary, Lemma2Corollary };

/// Largest l >= 0 with 2^l <= k·log e / log²k (Lemma1Corollary, k >= 4) or
/// 2^l <= log e·k / (2 log k) (Lemma2Corollary, k >= 2).
unsigned recommended_l(unsigned k, LScheme scheme);

struct ReferenceLines {
  double a = 0;  // 1/e
  double b = 0;  // 8 ln k
  double d = 0;  // 0.5 log2 k + 0.23
};
ReferenceLines reference_lines(unsigned k);

struct BoundsRow {
  unsigned k = 0;
  BigInt lll_lower;
  BigInt lemma1_s;
  unsigned lemma1_l = 0;
  BigInt lemma2_s;
  unsigned lemma2_l = 0;
  ReferenceLines lines;
  double savicky_alpha = kSavickySgallAlpha;
};

/// Exact lemma1_s = min over 1<=l<=k of the max occurrence (smallest l on
/// ties); lemma2_s = 2^(k−l+1) for the largest l meeting the condition.
BoundsRow bounds_row(unsigned k);

std::string bounds_csv_header();
std::string to_csv_line(const BoundsRow& row);

}  // namespace fewocc

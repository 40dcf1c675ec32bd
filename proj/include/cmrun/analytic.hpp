#pragma once

#include "cmrun/characters.hpp"

#include <optional>

namespace cmrun {

struct LValue {
  double value = 0.0;        // truncation of sum chi(n)/n
  double error_bound = 0.0;  // certified bound on the dropped tail
};

/// L(1, chi) for a non-principal real character, by direct truncation at
/// M = ceil(q / tol). Partial sums of chi are bounded by q/2 over any range,
/// so Abel summation bounds the tail by q/M <= tol.
LValue l_value(const RealCharacter& chi, double tol);

/// Comparison of the logarithmic mean (1/log Q) sum_{n<=Q} chi~(n)/n against
/// its Euler-factor limit (1/log Q) * prod_{p|q}(1 - eta(p)/p) * L(1, chi).
struct LogMeanReport {
  u64 q = 0;
  std::map<u64, int> eta;
  u64 Q = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double diff = 0.0;
  double bound_scale = 0.0;  // q * Q^(-1/8)
};

/// lhs is accumulated over exact +/-1 values in descending n with
/// compensated summation; rhs uses l_value at the given tolerance.
LogMeanReport log_mean_report(const ModifiedCharacter& chi, u64 Q, double l_tol = 1e-7);

/// Mean value of a modified principal character:
///   prod_{p|q} (1 - 1/p) / (1 - eta(p)/p),  always positive.
double principal_mean(const ModifiedCharacter& chi);

/// Base-q digits of k (least significant first, leading digit nonzero) and
/// the levels k_j = sum_{i>=j} a_i q^(i-j); k_0 = k, k_{j+1} = k_j div q.
struct DigitDecomposition {
  u64 k = 0;
  u64 q = 0;
  std::vector<u32> digits;
  std::vector<u64> levels;
};

DigitDecomposition digits_base_q(u64 k, u64 q);

/// S'_q(l) = max over q-l <= n <= q of sum_{m=0}^{l} chi_q(n+m), with chi_q
/// the Kronecker character mod an odd prime q (zero at multiples of q).
/// Exact, by enumerating the l+1 admissible starting points.
int s_prime(u64 q, u32 l);

/// delta'_q(l) = (l - S'_q(l)) / 2, as a half-integer times two.
i64 delta_prime_twice(u64 q, u32 l);

/// Lower bound on delta_q(k) from the base-q digit recursion. Values are
/// half-integers stored as twice their value. For q = 3 the last-level term
/// uses the exact S_3(a_nu) = a_nu (witnessed by explicit runs for both eta
/// signs), so the chain value is a certified bound and the closed form
///   (k - (floor(log_3 k) + 2)) / 2
/// is also reported. For other q the last-level term falls back to a scanned
/// estimate of S_q(a_nu), which only certifies the bound heuristically.
struct DigitBound {
  u64 q = 0;
  u64 k = 0;
  DigitDecomposition decomposition;
  i64 chain_twice = 0;
  std::optional<i64> closed_form_twice;  // q = 3 only
  bool certified = false;
};

DigitBound digit_lower_bound(u64 q, u64 k, u64 search_bound = 1'000'000);

}  // namespace cmrun

#pragma once

#include "cmrun/arith.hpp"

#include <map>
#include <vector>

namespace cmrun {

enum class CharacterKind { principal, kronecker };

/// A real Dirichlet character mod q: the principal character or the
/// Kronecker-symbol character. Values lie in {-1, 0, +1} and vanish exactly
/// on integers sharing a factor with q.
struct RealCharacter {
  u64 modulus = 1;
  CharacterKind kind = CharacterKind::kronecker;

  int eval(u64 n) const;
  bool operator==(const RealCharacter&) const = default;
};

/// A real character with its zero values replaced: at each prime p | q the
/// function takes a chosen sign eta(p), extended completely multiplicatively.
/// The result is +/-1 on all of N.
class ModifiedCharacter {
 public:
  /// The trivial character mod 1 (identically +1).
  ModifiedCharacter() = default;

  /// eta must assign a sign to exactly the prime divisors of base.modulus.
  ModifiedCharacter(RealCharacter base, std::map<u64, int> eta);

  int eval(u64 n) const;          // n >= 1
  int eval_at_prime(u64 p) const; // p assumed prime

  const RealCharacter& base() const { return base_; }
  u64 modulus() const { return base_.modulus; }
  const std::map<u64, int>& eta() const { return eta_; }

  bool operator==(const ModifiedCharacter&) const = default;

 private:
  RealCharacter base_;
  std::map<u64, int> eta_;
};

/// f = chi * lambda_S: a modified character with a finite set S of flipped
/// primes, each coprime to the modulus. Completely multiplicative, +/-1 on N.
class CMFunction {
 public:
  explicit CMFunction(ModifiedCharacter chi, std::vector<u64> flips = {});

  int eval(u64 n) const;          // n >= 1
  int eval_at_prime(u64 p) const;

  const ModifiedCharacter& chi() const { return chi_; }
  u64 modulus() const { return chi_.modulus(); }
  const std::vector<u64>& flips() const { return flips_; }  // sorted

  bool operator==(const CMFunction&) const = default;

 private:
  ModifiedCharacter chi_;
  std::vector<u64> flips_;
};

/// Pretentious distance D(f, g; x) = (sum over primes p <= x of
/// (1 - f(p) g(p)) / p)^(1/2). For +/-1 functions each term is 0 or 2/p.
double pretentious_distance(const CMFunction& f, const CMFunction& g, u64 x);

/// Pointwise product of two functions over the same modulus. Kronecker
/// parts square to the principal character and the eta maps multiply
/// pointwise, so the product is again representable over that modulus; the
/// flip sets combine by symmetric difference. Distinct moduli are rejected.
CMFunction product(const CMFunction& f, const CMFunction& g);

/// Prime divisors of n, increasing.
std::vector<u64> prime_divisors(u64 n);

}  // namespace cmrun

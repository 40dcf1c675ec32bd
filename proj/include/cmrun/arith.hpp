#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cmrun {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// Every modulus, witness and scan bound in this project fits in 63 bits;
// anything larger is reported as overflow instead of wrapping.
inline constexpr u64 kValueLimit = u64{1} << 63;

struct PrimePower {
  u64 prime;
  u32 exponent;
};

struct Factorization {
  u64 n = 1;
  std::vector<PrimePower> factors;  // primes strictly increasing

  u64 recompose() const;
};

struct Congruence {
  u64 residue;  // < modulus
  u64 modulus;  // >= 2
};
using CongruenceSystem = std::vector<Congruence>;

struct CrtSolution {
  u64 residue;  // least nonnegative solution
  u64 modulus;  // lcm of the input moduli
};

/// Thrown by crt_solve when the congruences contradict each other.
struct CrtNoSolution : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime(u64 n);

/// All primes <= limit, increasing. limit is capped at 1e8.
std::vector<u64> primes_upto(u64 limit);

/// Canonical prime factorization. Trial division against a cached table of
/// primes <= 1e6, Pollard-Brent rho for larger cofactors. n = 1 gives an
/// empty factor list; n = 0 is rejected.
Factorization factorize(u64 n);

/// Largest e with p^e | n. p must be prime, n >= 1.
u32 valuation(u64 n, u64 p);

/// Real character mod q evaluated at n, as a symbol in {-1, 0, +1}.
///
/// For odd q this is the Jacobi symbol (n|q) (Legendre for prime q). The
/// 2-part of q contributes the unique real character of its level: trivial
/// for 2^1, the nontrivial character mod 4 for 2^2, and the mod-8 symbol for
/// 2^e with e >= 3. Completely multiplicative in n, zero exactly when
/// gcd(n, q) > 1, and q-periodic.
int kronecker(i64 n, u64 q);

/// Solves a simultaneous congruence system. Moduli need not be coprime; an
/// inconsistent system throws CrtNoSolution, an lcm above 2^63 throws
/// std::overflow_error. The empty system yields (0, 1).
CrtSolution crt_solve(const CongruenceSystem& sys);

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);

/// a*b, throwing std::overflow_error beyond kValueLimit.
u64 checked_mul(u64 a, u64 b);

u64 gcd_u64(u64 a, u64 b);

}  // namespace cmrun

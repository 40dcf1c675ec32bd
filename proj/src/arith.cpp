#include "cmrun/arith.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

namespace cmrun {

namespace {

constexpr u64 kSmallFactorLimit = 1'000'000;  // trial-division table ceiling
constexpr u64 kSieveLimit = 100'000'000;      // hard cap for primes_upto

// Shared smallest-prime-factor table for n <= 1e6. Built once, read-only
// afterwards, so concurrent evaluation through factorize is safe.
std::vector<u32> g_spf;
std::vector<u64> g_small_primes;
std::once_flag g_spf_once;

void build_small_tables() {
  g_spf.assign(kSmallFactorLimit + 1, 0);
  for (u64 i = 2; i <= kSmallFactorLimit; ++i) {
    if (g_spf[i] == 0) {
      g_small_primes.push_back(i);
      for (u64 j = i; j <= kSmallFactorLimit; j += i)
        if (g_spf[j] == 0) g_spf[j] = static_cast<u32>(i);
    }
  }
}

void ensure_small_tables() { std::call_once(g_spf_once, build_small_tables); }

u64 rho_step(u64 x, u64 c, u64 n) { return (static_cast<u128>(x) * x + c) % n; }

// Pollard-Brent with a fixed constant schedule; deterministic across runs.
u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 x = 2, y = 2, d = 1;
    u64 power = 1, lam = 1;
    while (d == 1) {
      if (power == lam) {
        x = y;
        power *= 2;
        lam = 0;
      }
      y = rho_step(y, c, n);
      ++lam;
      u64 diff = x > y ? x - y : y - x;
      if (diff == 0) break;
      d = gcd_u64(diff, n);
    }
    if (d != 1 && d != n) return d;
  }
}

int jacobi_odd(u64 a, u64 m) {
  // m odd >= 1
  a %= m;
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      u64 r = m % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, m);
    if (a % 4 == 3 && m % 4 == 3) result = -result;
    a %= m;
  }
  return m == 1 ? result : 0;
}

u64 modinv(u64 a, u64 m) {
  // gcd(a, m) == 1 expected
  i128 t = 0, new_t = 1;
  i128 r = m, new_r = a % m;
  while (new_r != 0) {
    i128 q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (t < 0) t += m;
  return static_cast<u64>(t);
}

}  // namespace

u64 gcd_u64(u64 a, u64 b) {
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = m == 1 ? 0 : 1;
  a %= m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

u64 checked_mul(u64 a, u64 b) {
  u128 p = static_cast<u128>(a) * b;
  if (p > kValueLimit)
    throw std::overflow_error("product exceeds the 2^63 value limit");
  return static_cast<u64>(p);
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  // This base set is deterministic for all n < 3.3e24.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::vector<u64> primes_upto(u64 limit) {
  if (limit > kSieveLimit)
    throw std::invalid_argument("primes_upto: limit above 1e8 is unsupported");
  std::vector<u64> primes;
  if (limit < 2) return primes;
  primes.push_back(2);
  if (limit < 3) return primes;
  // odd-only sieve: bit i represents 2i+3
  u64 half = (limit - 3) / 2 + 1;
  std::vector<u64> composite((half + 63) / 64, 0);
  auto test = [&](u64 i) { return (composite[i >> 6] >> (i & 63)) & 1; };
  auto set = [&](u64 i) { composite[i >> 6] |= u64{1} << (i & 63); };
  for (u64 i = 0; i < half; ++i) {
    if (test(i)) continue;
    u64 p = 2 * i + 3;
    primes.push_back(p);
    if (p > limit / p) continue;
    for (u64 j = (p * p - 3) / 2; j < half; j += p) set(j);
  }
  return primes;
}

u64 Factorization::recompose() const {
  u128 prod = 1;
  for (const auto& [p, e] : factors)
    for (u32 i = 0; i < e; ++i) prod *= p;
  return static_cast<u64>(prod);
}

Factorization factorize(u64 n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  ensure_small_tables();
  Factorization out;
  out.n = n;
  if (n <= kSmallFactorLimit) {
    while (n > 1) {
      u64 p = g_spf[n];
      u32 e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.factors.push_back({p, e});
    }
    return out;
  }
  for (u64 p : g_small_primes) {
    if (p > n / p) break;
    if (n % p == 0) {
      u32 e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.factors.push_back({p, e});
    }
  }
  // remaining cofactor has no prime factor <= 1e6
  std::vector<u64> stack;
  if (n > 1) stack.push_back(n);
  std::vector<u64> large;
  while (!stack.empty()) {
    u64 m = stack.back();
    stack.pop_back();
    if (is_prime(m)) {
      large.push_back(m);
      continue;
    }
    u64 d = pollard_brent(m);
    stack.push_back(d);
    stack.push_back(m / d);
  }
  std::sort(large.begin(), large.end());
  for (std::size_t i = 0; i < large.size();) {
    std::size_t j = i;
    while (j < large.size() && large[j] == large[i]) ++j;
    out.factors.push_back({large[i], static_cast<u32>(j - i)});
    i = j;
  }
  return out;
}

u32 valuation(u64 n, u64 p) {
  if (n == 0) throw std::invalid_argument("valuation: n must be positive");
  if (!is_prime(p)) throw std::invalid_argument("valuation: p must be prime");
  u32 v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

int kronecker(i64 n, u64 q) {
  if (q == 0) throw std::invalid_argument("kronecker: modulus must be positive");
  u32 e2 = 0;
  u64 m = q;
  while (m % 2 == 0) {
    m /= 2;
    ++e2;
  }
  int two_part = 1;
  if (e2 > 0) {
    if (n % 2 == 0) return 0;
    u64 r8 = static_cast<u64>(((n % 8) + 8) % 8);
    if (e2 == 2) {
      two_part = (r8 % 4 == 1) ? 1 : -1;
    } else if (e2 >= 3) {
      two_part = (r8 == 1 || r8 == 7) ? 1 : -1;
    }
  }
  if (m == 1) return two_part;
  u64 a = static_cast<u64>(((n % static_cast<i64>(m)) + static_cast<i64>(m)) % static_cast<i64>(m));
  return two_part * jacobi_odd(a, m);
}

CrtSolution crt_solve(const CongruenceSystem& sys) {
  u64 r = 0, m = 1;
  for (const auto& c : sys) {
    if (c.modulus < 2) throw std::invalid_argument("crt_solve: modulus must be >= 2");
    if (c.residue >= c.modulus) throw std::invalid_argument("crt_solve: residue must be < modulus");
    u64 g = gcd_u64(m, c.modulus);
    u64 diff = (c.residue % c.modulus + c.modulus - r % c.modulus) % c.modulus;
    if (diff % g != 0)
      throw CrtNoSolution("crt_solve: congruences are inconsistent");
    u64 lcm = checked_mul(m / g, c.modulus);
    u64 m2g = c.modulus / g;
    u64 t = mulmod(diff / g % m2g, modinv(m / g % m2g, m2g), m2g);
    r = static_cast<u64>((static_cast<u128>(m) * t + r) % lcm);
    m = lcm;
  }
  return {r, m};
}

}  // namespace cmrun

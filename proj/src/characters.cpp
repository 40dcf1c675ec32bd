#include "cmrun/characters.hpp"

#include <algorithm>
#include <cmath>

namespace cmrun {

std::vector<u64> prime_divisors(u64 n) {
  std::vector<u64> out;
  for (const auto& [p, e] : factorize(n).factors) out.push_back(p);
  return out;
}

int RealCharacter::eval(u64 n) const {
  if (n == 0) throw std::invalid_argument("character eval: n must be positive");
  if (kind == CharacterKind::principal)
    return gcd_u64(n, modulus) == 1 ? 1 : 0;
  return kronecker(static_cast<i64>(n % modulus), modulus);
}

ModifiedCharacter::ModifiedCharacter(RealCharacter base, std::map<u64, int> eta)
    : base_(base), eta_(std::move(eta)) {
  if (base_.modulus == 0)
    throw std::invalid_argument("modified character: modulus must be positive");
  auto divisors = prime_divisors(base_.modulus);
  if (divisors.size() != eta_.size())
    throw std::invalid_argument("modified character: eta must cover exactly the prime divisors of the modulus");
  for (u64 p : divisors) {
    auto it = eta_.find(p);
    if (it == eta_.end())
      throw std::invalid_argument("modified character: eta missing prime divisor");
    if (it->second != 1 && it->second != -1)
      throw std::invalid_argument("modified character: eta values must be +1 or -1");
  }
}

int ModifiedCharacter::eval_at_prime(u64 p) const {
  auto it = eta_.find(p);
  if (it != eta_.end()) return it->second;
  return base_.kind == CharacterKind::principal ? 1 : kronecker(static_cast<i64>(p % base_.modulus), base_.modulus);
}

int ModifiedCharacter::eval(u64 n) const {
  if (n == 0) throw std::invalid_argument("modified character eval: n must be positive");
  int sign = 1;
  for (const auto& [p, e] : factorize(n).factors) {
    if (e % 2 == 1 && eval_at_prime(p) == -1) sign = -sign;
  }
  return sign;
}

CMFunction::CMFunction(ModifiedCharacter chi, std::vector<u64> flips)
    : chi_(std::move(chi)), flips_(std::move(flips)) {
  std::sort(flips_.begin(), flips_.end());
  flips_.erase(std::unique(flips_.begin(), flips_.end()), flips_.end());
  for (u64 p : flips_) {
    if (!is_prime(p))
      throw std::invalid_argument("cm function: flipped values must sit at primes");
    if (chi_.modulus() % p == 0)
      throw std::invalid_argument("cm function: flip primes must not divide the modulus");
  }
}

int CMFunction::eval_at_prime(u64 p) const {
  int s = chi_.eval_at_prime(p);
  if (std::binary_search(flips_.begin(), flips_.end(), p)) s = -s;
  return s;
}

int CMFunction::eval(u64 n) const {
  if (n == 0) throw std::invalid_argument("cm function eval: n must be positive");
  int sign = 1;
  for (const auto& [p, e] : factorize(n).factors) {
    if (e % 2 == 1 && eval_at_prime(p) == -1) sign = -sign;
  }
  return sign;
}

double pretentious_distance(const CMFunction& f, const CMFunction& g, u64 x) {
  if (x < 2) throw std::invalid_argument("pretentious_distance: x must be >= 2");
  double sum = 0.0;
  for (u64 p : primes_upto(x)) {
    if (f.eval_at_prime(p) != g.eval_at_prime(p)) sum += 2.0 / static_cast<double>(p);
  }
  return std::sqrt(sum);
}

CMFunction product(const CMFunction& f, const CMFunction& g) {
  if (f.modulus() != g.modulus())
    throw std::invalid_argument("product: functions must share a base modulus");
  const auto& a = f.chi();
  const auto& b = g.chi();
  CharacterKind kind = a.base().kind == b.base().kind ? CharacterKind::principal
                                                      : CharacterKind::kronecker;
  std::map<u64, int> eta;
  for (const auto& [p, s] : a.eta()) eta[p] = s * b.eta().at(p);
  std::vector<u64> flips;
  std::set_symmetric_difference(f.flips().begin(), f.flips().end(),
                                g.flips().begin(), g.flips().end(),
                                std::back_inserter(flips));
  return CMFunction(ModifiedCharacter({f.modulus(), kind}, std::move(eta)), std::move(flips));
}

}  // namespace cmrun

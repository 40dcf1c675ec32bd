#pragma once

#include "cmrun/extension.hpp"

#include <string>

namespace cmrun {

/// Categories for function-spec document rejections; each maps to its own
/// message so callers can tell schema problems apart from number-theoretic
/// ones.
enum class SpecErrorCode {
  schema_violation,
  non_prime_eta_key,
  eta_key_not_divisor,
  missing_prime_divisor,
  flip_divides_modulus,
  flip_not_prime,
};

struct SpecError : std::runtime_error {
  SpecError(SpecErrorCode code_, const std::string& what)
      : std::runtime_error(what), code(code_) {}
  SpecErrorCode code;
};

/// Parses a function-spec document:
///   {"modulus": 5, "kind": "kronecker", "eta": {"5": 1}, "flips": [7]}
/// eta keys are decimal prime strings and must cover exactly the prime
/// divisors of the modulus; flips must be strictly increasing primes coprime
/// to the modulus. "flips" may be omitted (empty set).
CMFunction parse_function_spec(const std::string& text);

/// Canonical serialization: fixed key order, eta keys ascending, flips
/// sorted. parse(serialize(f)) reproduces f and serialize(parse(t)) is
/// canonical for any accepted t.
std::string serialize_function_spec(const CMFunction& f);

/// Certificate document for an extension: base spec, window data, chosen
/// primes, the congruence system and the verified witness. Enough for a
/// third party to re-check the construction with nothing else.
std::string serialize_certificate(const ExtensionPlan& plan);

struct CertificateCheck {
  bool ok = false;
  std::vector<std::string> failures;
  ExtensionPlan plan;
};

/// Re-verifies a certificate from its text alone: schema, prime side
/// conditions, the congruences at the witness, and a fresh evaluation of the
/// window (every value must be +1 and match the recorded pattern).
CertificateCheck verify_certificate(const std::string& text);

}  // namespace cmrun

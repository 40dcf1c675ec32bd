#include "cmrun/spec_io.hpp"

#include <json.hpp>

#include <algorithm>

namespace cmrun {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void fail(SpecErrorCode code, const std::string& what) {
  throw SpecError(code, what);
}

u64 parse_prime_key(const std::string& key) {
  if (key.empty() || key.find_first_not_of("0123456789") != std::string::npos)
    fail(SpecErrorCode::schema_violation, "eta key is not a decimal integer: " + key);
  u64 p = 0;
  try {
    p = std::stoull(key);
  } catch (const std::exception&) {
    fail(SpecErrorCode::schema_violation, "eta key out of range: " + key);
  }
  return p;
}

CMFunction function_from_json(const ordered_json& doc) {
  if (!doc.is_object()) fail(SpecErrorCode::schema_violation, "spec must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "modulus" && key != "kind" && key != "eta" && key != "flips")
      fail(SpecErrorCode::schema_violation, "unknown field: " + key);
  }
  if (!doc.contains("modulus") || !doc["modulus"].is_number_unsigned() ||
      doc["modulus"].get<u64>() == 0)
    fail(SpecErrorCode::schema_violation, "modulus must be a positive integer");
  u64 modulus = doc["modulus"].get<u64>();

  if (!doc.contains("kind") || !doc["kind"].is_string())
    fail(SpecErrorCode::schema_violation, "kind must be a string");
  std::string kind_text = doc["kind"].get<std::string>();
  CharacterKind kind;
  if (kind_text == "principal")
    kind = CharacterKind::principal;
  else if (kind_text == "kronecker")
    kind = CharacterKind::kronecker;
  else
    fail(SpecErrorCode::schema_violation, "kind must be \"principal\" or \"kronecker\"");

  if (!doc.contains("eta") || !doc["eta"].is_object())
    fail(SpecErrorCode::schema_violation, "eta must be an object");
  std::map<u64, int> eta;
  for (const auto& [key, value] : doc["eta"].items()) {
    u64 p = parse_prime_key(key);
    if (!is_prime(p)) fail(SpecErrorCode::non_prime_eta_key, "eta key is not prime: " + key);
    if (modulus % p != 0)
      fail(SpecErrorCode::eta_key_not_divisor, "eta key does not divide the modulus: " + key);
    if (!value.is_number_integer() || (value.get<i64>() != 1 && value.get<i64>() != -1))
      fail(SpecErrorCode::schema_violation, "eta values must be +1 or -1");
    eta[p] = static_cast<int>(value.get<i64>());
  }
  for (u64 p : prime_divisors(modulus)) {
    if (!eta.count(p))
      fail(SpecErrorCode::missing_prime_divisor,
           "eta is missing prime divisor " + std::to_string(p));
  }

  std::vector<u64> flips;
  if (doc.contains("flips")) {
    if (!doc["flips"].is_array())
      fail(SpecErrorCode::schema_violation, "flips must be an array");
    for (const auto& item : doc["flips"]) {
      if (!item.is_number_unsigned())
        fail(SpecErrorCode::schema_violation, "flips entries must be positive integers");
      flips.push_back(item.get<u64>());
    }
    for (std::size_t i = 1; i < flips.size(); ++i)
      if (flips[i] <= flips[i - 1])
        fail(SpecErrorCode::schema_violation, "flips must be strictly increasing");
    for (u64 p : flips) {
      if (!is_prime(p))
        fail(SpecErrorCode::flip_not_prime, "flip is not prime: " + std::to_string(p));
      if (modulus % p == 0)
        fail(SpecErrorCode::flip_divides_modulus,
             "flip divides the modulus: " + std::to_string(p));
    }
  }

  return CMFunction(ModifiedCharacter({modulus, kind}, std::move(eta)), std::move(flips));
}

ordered_json function_to_json(const CMFunction& f) {
  ordered_json doc;
  doc["modulus"] = f.modulus();
  doc["kind"] = f.chi().base().kind == CharacterKind::principal ? "principal" : "kronecker";
  ordered_json eta = ordered_json::object();
  for (const auto& [p, s] : f.chi().eta()) eta[std::to_string(p)] = s;
  doc["eta"] = std::move(eta);
  doc["flips"] = f.flips();
  return doc;
}

ordered_json parse_text(const std::string& text) {
  ordered_json doc = ordered_json::parse(text, nullptr, false);
  if (doc.is_discarded())
    fail(SpecErrorCode::schema_violation, "document is not valid JSON");
  return doc;
}

}  // namespace

CMFunction parse_function_spec(const std::string& text) {
  return function_from_json(parse_text(text));
}

std::string serialize_function_spec(const CMFunction& f) {
  return function_to_json(f).dump(2) + "\n";
}

std::string serialize_certificate(const ExtensionPlan& plan) {
  ordered_json doc;
  doc["base_spec"] = function_to_json(CMFunction(plan.chi));
  doc["k"] = plan.k;
  doc["base_window_start"] = plan.base_window.start;
  doc["base_pattern"] = plan.base_window.pattern;
  doc["offsets_J"] = plan.offsets;
  doc["primes"] = plan.primes;
  doc["beta"] = plan.beta;
  ordered_json crt = ordered_json::array();
  for (const auto& c : plan.crt)
    crt.push_back(ordered_json{{"residue", c.residue}, {"modulus", c.modulus}});
  doc["crt"] = std::move(crt);
  doc["crt_modulus"] = plan.crt_modulus;
  doc["witness"] = plan.witness;
  ordered_json pattern = ordered_json::array();
  for (u32 a = 1; a <= plan.k; ++a) pattern.push_back(1);
  doc["pattern"] = std::move(pattern);
  return doc.dump(2) + "\n";
}

CertificateCheck verify_certificate(const std::string& text) {
  CertificateCheck check;
  ordered_json doc = parse_text(text);
  if (!doc.is_object()) fail(SpecErrorCode::schema_violation, "certificate must be a JSON object");
  for (const char* field : {"base_spec", "k", "base_window_start", "offsets_J", "primes",
                            "beta", "crt_modulus", "witness", "pattern"}) {
    if (!doc.contains(field))
      fail(SpecErrorCode::schema_violation, std::string("certificate missing field: ") + field);
  }

  CMFunction base = function_from_json(doc["base_spec"]);
  if (!base.flips().empty())
    fail(SpecErrorCode::schema_violation, "certificate base_spec must not carry flips");
  u32 k = doc["k"].get<u32>();
  if (k == 0) fail(SpecErrorCode::schema_violation, "k must be positive");

  ExtensionPlan plan;
  plan.chi = base.chi();
  plan.k = k;
  plan.offsets = doc["offsets_J"].get<std::vector<u32>>();
  plan.primes = doc["primes"].get<std::vector<u64>>();
  plan.beta = doc["beta"].get<u32>();
  plan.crt_modulus = doc["crt_modulus"].get<u64>();
  plan.witness = doc["witness"].get<u64>();
  if (doc.contains("crt")) {
    for (const auto& c : doc["crt"])
      plan.crt.push_back({c.at("residue").get<u64>(), c.at("modulus").get<u64>()});
  }

  auto reject = [&](const std::string& why) { check.failures.push_back(why); };

  u64 q = base.modulus();
  if (plan.offsets.size() != plan.primes.size())
    reject("offsets_J and primes must have the same size");
  for (u64 p : plan.primes) {
    if (!is_prime(p)) reject("modified prime is not prime: " + std::to_string(p));
    if (p <= k) reject("modified prime must exceed k: " + std::to_string(p));
    if (q % p == 0) reject("modified prime divides the modulus: " + std::to_string(p));
  }
  for (u32 a : plan.offsets)
    if (a == 0 || a > k) reject("offset out of range: " + std::to_string(a));

  if (plan.witness >= kValueLimit - k) {
    reject("witness too large");
    check.plan = std::move(plan);
    return check;
  }

  // congruence checks at the witness
  if (plan.offsets.size() == plan.primes.size()) {
    for (std::size_t i = 0; i < plan.primes.size(); ++i) {
      u64 p2 = plan.primes[i] * plan.primes[i];
      if ((plan.witness + plan.offsets[i]) % p2 != plan.primes[i] % p2)
        reject("witness misses the mod-p^2 congruence at prime " + std::to_string(plan.primes[i]));
    }
  }
  if (q >= 2 && plan.beta >= 1) {
    u64 q_power = 1;
    bool overflow = false;
    for (u32 i = 0; i < plan.beta; ++i) {
      if (q_power > kValueLimit / q) {
        overflow = true;
        break;
      }
      q_power *= q;
    }
    u64 start = doc["base_window_start"].get<u64>();
    if (overflow)
      reject("q^beta exceeds the value limit");
    else if (plan.witness % q_power != start % q_power)
      reject("witness does not match the base window mod q^beta");
  }

  // the core check: re-evaluate the window
  CMFunction f(base.chi(), plan.primes);
  std::vector<int> pattern = doc["pattern"].get<std::vector<int>>();
  if (pattern.size() != k) reject("pattern length does not match k");
  for (u32 a = 1; a <= k; ++a) {
    int v = f.eval(plan.witness + a);
    if (v != 1)
      reject("window value at offset " + std::to_string(a) + " is not +1");
    if (a <= pattern.size() && pattern[a - 1] != v)
      reject("recorded pattern disagrees at offset " + std::to_string(a));
  }

  plan.verified = check.failures.empty();
  check.ok = check.failures.empty();
  check.plan = std::move(plan);
  return check;
}

}  // namespace cmrun

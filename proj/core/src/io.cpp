#include "vqsignal/io.hpp"

#include <json.hpp>

#include <cstdint>
#include <iomanip>
#include <sstream>

#include "vqsignal/error.hpp"
#include "vqsignal/objectives.hpp"

namespace vqsignal {

namespace {

using nlohmann::json;

Rational rational_field(const json& value, const std::string& where) {
  if (value.is_string()) {
    try {
      return parse_rational(value.get<std::string>());
    } catch (const InputError& e) {
      throw InputError(where + ": " + e.what());
    }
  }
  if (value.is_number_integer()) return Rational(value.get<long>());
  throw InputError(where + ": expected a rational string");
}

RationalVector rational_array(const json& value, const std::string& where) {
  if (!value.is_array()) throw InputError(where + ": expected an array");
  RationalVector out;
  for (std::size_t i = 0; i < value.size(); ++i)
    out.push_back(rational_field(value[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

const json& require(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return doc.at(key);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed document: ") + e.what());
  }
}

json string_array(const RationalVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

}  // namespace

Instance parse_instance(std::string_view text) {
  const json doc = parse_json(text);
  Instance inst;
  inst.capacities = rational_array(require(doc, "capacities"), "capacities");
  const json& tt = require(doc, "travel_times");
  if (!tt.is_array()) throw InputError("travel_times: expected an array of rows");
  for (std::size_t i = 0; i < tt.size(); ++i)
    inst.travel_times.push_back(rational_array(tt[i], "travel_times[" + std::to_string(i) + "]"));
  inst.inflow = rational_field(require(doc, "inflow"), "inflow");
  inst.horizon = rational_field(require(doc, "horizon"), "horizon");
  inst.prior = rational_array(require(doc, "prior"), "prior");
  inst.validate();
  return inst;
}

std::string format_instance(const Instance& inst) {
  json doc;
  doc["capacities"] = string_array(inst.capacities);
  json tt = json::array();
  for (const auto& row : inst.travel_times) tt.push_back(string_array(row));
  doc["travel_times"] = tt;
  doc["inflow"] = to_string(inst.inflow);
  doc["horizon"] = to_string(inst.horizon);
  doc["prior"] = string_array(inst.prior);
  return doc.dump(2) + "\n";
}

std::string format_scheme(const Instance& inst, const SignalingScheme& scheme) {
  json doc;
  json signals = json::array();
  for (const auto& sig : scheme.signals) {
    json s;
    s["alpha"] = to_string(sig.weight);
    s["belief"] = string_array(sig.belief);
    signals.push_back(s);
  }
  doc["signals"] = signals;
  json phi = json::array();
  for (const auto& row : scheme.phi()) phi.push_back(string_array(row));
  doc["phi"] = phi;
  const Rational alg = scheme_throughput(inst, scheme);
  doc["alg"] = to_string(alg);
  doc["alg_decimal"] = to_decimal(alg);
  return doc.dump(2) + "\n";
}

SignalingScheme parse_scheme(std::string_view text) {
  const json doc = parse_json(text);
  const json& signals = require(doc, "signals");
  if (!signals.is_array()) throw InputError("signals: expected an array");
  SignalingScheme scheme;
  for (std::size_t j = 0; j < signals.size(); ++j) {
    const std::string where = "signals[" + std::to_string(j) + "]";
    if (!signals[j].is_object()) throw InputError(where + ": expected an object");
    Signal sig;
    sig.weight = rational_field(require(signals[j], "alpha"), where + ".alpha");
    sig.belief = rational_array(require(signals[j], "belief"), where + ".belief");
    scheme.signals.push_back(std::move(sig));
  }
  return scheme;
}

std::string instance_hash(const Instance& inst) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : format_instance(inst)) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

}  // namespace vqsignal

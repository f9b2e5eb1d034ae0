#pragma once

#include <string>
#include <string_view>

#include "vqsignal/fptas.hpp"
#include "vqsignal/instance.hpp"

namespace vqsignal {

std::string format_scheme(const Instance& inst, const SignalingScheme& scheme);
SignalingScheme parse_scheme(std::string_view text);
// Stable 64-bit FNV-1a hash of the canonical instance document, in hex.
std::string instance_hash(const Instance& inst);

}  // namespace vqsignal

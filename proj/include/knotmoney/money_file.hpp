#pragma once

#include <string>
#include <string_view>

#include "knotmoney/mint.hpp"

namespace knotmoney {

inline constexpr int kMoneyFileVersion = 1;

/// JSON document with fields version, dbar, mode, serial, seed and payload.
/// The payload is a state dump ("hex begin end amplitude" lines) for exact
/// bills and a single hex diagram encoding for classical ones.
std::string write_money(const MoneyBill& bill);

/// Throws Error{MalformedFile} on any syntax, schema or consistency problem,
/// including payload diagrams that fail validation (step 0).
MoneyBill read_money(std::string_view text);

}  // namespace knotmoney

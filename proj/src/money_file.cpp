#include "knotmoney/money_file.hpp"

#include <cmath>
#include <json.hpp>

#include "knotmoney/alexander.hpp"
#include "knotmoney/error.hpp"

namespace knotmoney {

using ordered_json = nlohmann::ordered_json;

std::string write_money(const MoneyBill& bill) {
  ordered_json j;
  j["version"] = kMoneyFileVersion;
  j["dbar"] = bill.params.dbar;
  j["mode"] = bill.params.mode == MintMode::Exact ? "exact" : "classical";
  j["serial"] = bill.serial.to_string();
  j["seed"] = bill.params.seed;
  if (bill.state) {
    ordered_json lines = ordered_json::array();
    std::string text = dump(*bill.state);
    std::size_t pos = 0;
    while (pos < text.size()) {
      const auto nl = text.find('\n', pos);
      lines.push_back(text.substr(pos, nl - pos));
      pos = nl + 1;
    }
    j["payload"] = std::move(lines);
  } else if (bill.certificate) {
    j["payload"] = to_hex(encode(*bill.certificate));
  } else {
    throw Error(ErrorKind::InvalidParameter, "bill has no payload");
  }
  return j.dump(2) + "\n";
}

namespace {

[[noreturn]] void malformed(const std::string& why) { throw Error(ErrorKind::MalformedFile, why); }

template <class T>
T field(const ordered_json& j, const char* key) {
  if (!j.contains(key)) malformed(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    malformed(std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

MoneyBill read_money(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    malformed(std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) malformed("top level must be an object");
  if (field<int>(j, "version") != kMoneyFileVersion) malformed("unsupported version");
  MoneyBill bill;
  bill.params.dbar = field<int>(j, "dbar");
  if (bill.params.dbar < 2) malformed("dbar must be at least 2");
  const auto mode = field<std::string>(j, "mode");
  if (mode == "exact") {
    bill.params.mode = MintMode::Exact;
  } else if (mode == "classical") {
    bill.params.mode = MintMode::Classical;
  } else {
    malformed("unknown mode '" + mode + "'");
  }
  bill.params.seed = field<std::uint64_t>(j, "seed");
  try {
    bill.serial = SerialPolynomial::parse(field<std::string>(j, "serial"));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::MalformedFile) throw;
    malformed(std::string("serial: ") + e.what());
  }
  if (bill.serial.is_zero()) malformed("serial must be non-zero");
  try {
    if (bill.params.mode == MintMode::Exact) {
      const auto lines = field<std::vector<std::string>>(j, "payload");
      std::string dumped;
      for (const auto& l : lines) dumped += l + "\n";
      DiagramState s = parse_diagram_dump(dumped);
      if (s.empty()) malformed("empty payload");
      if (std::abs(s.norm2() - 1.0) > 1e-9) malformed("payload is not normalised");
      for (const auto& [g, a] : s) {
        if (g.dim() > 2 * bill.params.dbar) malformed("payload diagram larger than 2*dbar");
      }
      bill.state = std::move(s);
    } else {
      GridDiagram g = decode(from_hex(field<std::string>(j, "payload")));
      bill.certificate = std::move(g);
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::MalformedFile) throw;
    malformed(std::string("payload: ") + e.what());
  }
  return bill;
}

}  // namespace knotmoney

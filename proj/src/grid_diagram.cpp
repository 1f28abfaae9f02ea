#include "knotmoney/grid_diagram.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>

#include "knotmoney/error.hpp"

namespace knotmoney {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotAPermutation: return "NotAPermutation";
    case ErrorKind::NotDisjoint: return "NotDisjoint";
    case ErrorKind::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorKind::MalformedEncoding: return "MalformedEncoding";
    case ErrorKind::IllegalTransposition: return "IllegalTransposition";
    case ErrorKind::NoMarkerAtPosition: return "NoMarkerAtPosition";
    case ErrorKind::IllegalDestabilization: return "IllegalDestabilization";
    case ErrorKind::ExplosionLimit: return "ExplosionLimit";
    case ErrorKind::DisconnectedProjection: return "DisconnectedProjection";
    case ErrorKind::StateTooLarge: return "StateTooLarge";
    case ErrorKind::SpaceTooLarge: return "SpaceTooLarge";
    case ErrorKind::ZeroProbability: return "ZeroProbability";
    case ErrorKind::SerialMismatch: return "SerialMismatch";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::MalformedFile: return "MalformedFile";
    case ErrorKind::CapacityExceeded: return "CapacityExceeded";
  }
  return "Unknown";
}

namespace {

void check_permutation(std::span<const int> p, const char* name) {
  const int d = static_cast<int>(p.size());
  std::vector<char> seen(d, 0);
  for (int v : p) {
    if (v < 0 || v >= d || seen[v]) {
      throw Error(ErrorKind::NotAPermutation, std::string(name) + " is not a permutation of 0..d-1");
    }
    seen[v] = 1;
  }
}

}  // namespace

GridDiagram GridDiagram::validate(std::span<const int> x_rows, std::span<const int> o_rows) {
  if (x_rows.size() != o_rows.size()) {
    throw Error(ErrorKind::NotAPermutation, "x and o permutations differ in length");
  }
  const int d = static_cast<int>(x_rows.size());
  if (d > 0xFFFF) throw Error(ErrorKind::NotAPermutation, "dimension exceeds 65535");
  check_permutation(x_rows, "x");
  check_permutation(o_rows, "o");
  if (d < 2) throw Error(ErrorKind::DimensionTooSmall, "grid dimension must be at least 2");
  for (int i = 0; i < d; ++i) {
    if (x_rows[i] == o_rows[i]) {
      throw Error(ErrorKind::NotDisjoint, "X and O share cell in column " + std::to_string(i));
    }
  }
  std::vector<std::uint16_t> x(x_rows.begin(), x_rows.end());
  std::vector<std::uint16_t> o(o_rows.begin(), o_rows.end());
  return GridDiagram(std::move(x), std::move(o));
}

GridDiagram GridDiagram::from_trusted(std::vector<std::uint16_t> x_rows, std::vector<std::uint16_t> o_rows) {
  return GridDiagram(std::move(x_rows), std::move(o_rows));
}

Marker GridDiagram::at(int col, int row) const noexcept {
  if (col < 0 || col >= dim()) return Marker::None;
  if (x_[col] == row) return Marker::X;
  if (o_[col] == row) return Marker::O;
  return Marker::None;
}

std::vector<int> GridDiagram::x_cols() const {
  std::vector<int> inv(dim());
  for (int c = 0; c < dim(); ++c) inv[x_[c]] = c;
  return inv;
}

std::vector<int> GridDiagram::o_cols() const {
  std::vector<int> inv(dim());
  for (int c = 0; c < dim(); ++c) inv[o_[c]] = c;
  return inv;
}

std::size_t GridDiagram::hash() const noexcept {
  // FNV-1a over both permutations.
  std::uint64_t h = 1469598103934665603ull ^ x_.size();
  for (auto v : x_) h = (h ^ v) * 1099511628211ull;
  for (auto v : o_) h = (h ^ v) * 1099511628211ull;
  return static_cast<std::size_t>(h ^ (h >> 29));
}

std::vector<Crossing> crossings(const GridDiagram& g) {
  const int d = g.dim();
  const auto xc = g.x_cols();
  const auto oc = g.o_cols();
  std::vector<Crossing> out;
  for (int c = 0; c < d; ++c) {
    const int vlo = std::min(g.x_row(c), g.o_row(c));
    const int vhi = std::max(g.x_row(c), g.o_row(c));
    for (int r = vlo + 1; r < vhi; ++r) {
      const int hlo = std::min(xc[r], oc[r]);
      const int hhi = std::max(xc[r], oc[r]);
      if (hlo < c && c < hhi) {
        out.push_back(Crossing{c, r, xc[r] > oc[r] ? HorizontalDir::East : HorizontalDir::West,
                               g.o_row(c) > g.x_row(c) ? VerticalDir::North : VerticalDir::South});
      }
    }
  }
  return out;
}

ComponentLabels components(const GridDiagram& g) {
  const int d = g.dim();
  const auto xc = g.x_cols();
  ComponentLabels labels;
  labels.of_column.assign(d, -1);
  for (int start = 0; start < d; ++start) {
    if (labels.of_column[start] >= 0) continue;
    // Column c: up/down from X to O, then along the O's row to that row's X.
    int c = start;
    do {
      labels.of_column[c] = labels.count;
      c = xc[g.o_row(c)];
    } while (c != start);
    ++labels.count;
  }
  return labels;
}

bool is_connected_projection(const GridDiagram& g) {
  const auto comps = components(g);
  if (comps.count <= 1) return true;
  std::vector<int> parent(comps.count);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  const auto xc = g.x_cols();
  int groups = comps.count;
  for (const auto& c : crossings(g)) {
    const int a = find(comps.of_column[c.col]);
    const int b = find(comps.of_column[xc[c.row]]);
    if (a != b) {
      parent[a] = b;
      --groups;
    }
  }
  return groups == 1;
}

std::vector<std::uint8_t> encode(const GridDiagram& g) {
  std::vector<std::uint8_t> out;
  out.reserve(3 + 4 * g.dim());
  auto put16 = [&](std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
  };
  out.push_back(kEncodingVersion);
  put16(static_cast<std::uint16_t>(g.dim()));
  for (auto v : g.x_rows()) put16(v);
  for (auto v : g.o_rows()) put16(v);
  return out;
}

GridDiagram decode(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 3) throw Error(ErrorKind::MalformedEncoding, "encoding shorter than header");
  if (bytes[0] != kEncodingVersion) {
    throw Error(ErrorKind::MalformedEncoding, "unknown encoding version " + std::to_string(bytes[0]));
  }
  auto get16 = [&](std::size_t at) { return static_cast<int>(bytes[at] | (bytes[at + 1] << 8)); };
  const int d = get16(1);
  if (bytes.size() != 3 + 4 * static_cast<std::size_t>(d)) {
    throw Error(ErrorKind::MalformedEncoding, "encoding length does not match dimension");
  }
  std::vector<int> x(d), o(d);
  for (int i = 0; i < d; ++i) {
    x[i] = get16(3 + 2 * i);
    o[i] = get16(3 + 2 * (d + i));
  }
  return GridDiagram::validate(x, o);
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    s.push_back(kDigits[b >> 4]);
    s.push_back(kDigits[b & 0xF]);
  }
  return s;
}

std::vector<std::uint8_t> from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw Error(ErrorKind::MalformedEncoding, "odd-length hex string");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw Error(ErrorKind::MalformedEncoding, std::string("invalid hex digit '") + c + "'");
  };
  std::vector<std::uint8_t> out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
  }
  return out;
}

std::string to_text(const GridDiagram& g) {
  std::string s;
  for (int i = 0; i < g.dim(); ++i) {
    if (i) s += ',';
    s += std::to_string(g.x_row(i));
  }
  s += '/';
  for (int i = 0; i < g.dim(); ++i) {
    if (i) s += ',';
    s += std::to_string(g.o_row(i));
  }
  return s;
}

namespace {

std::vector<int> parse_int_list(std::string_view s) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto next = s.find(',', pos);
    const auto tok = s.substr(pos, next == std::string_view::npos ? s.size() - pos : next - pos);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw Error(ErrorKind::MalformedEncoding, "bad integer '" + std::string(tok) + "'");
    }
    out.push_back(v);
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

}  // namespace

GridDiagram parse_text(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) throw Error(ErrorKind::MalformedEncoding, "expected 'x.../o...'");
  return GridDiagram::validate(parse_int_list(text.substr(0, slash)), parse_int_list(text.substr(slash + 1)));
}

GridDiagram parse_diagram(std::string_view spec) {
  while (!spec.empty() && std::isspace(static_cast<unsigned char>(spec.back()))) spec.remove_suffix(1);
  while (!spec.empty() && std::isspace(static_cast<unsigned char>(spec.front()))) spec.remove_prefix(1);
  if (spec.find('/') != std::string_view::npos) return parse_text(spec);
  return decode(from_hex(spec));
}

std::string render_ascii(const GridDiagram& g) {
  const int d = g.dim();
  const int w = 2 * d - 1;
  std::vector<std::string> canvas(d, std::string(w, ' '));
  const auto xc = g.x_cols();
  const auto oc = g.o_cols();
  for (int r = 0; r < d; ++r) {
    const int lo = std::min(xc[r], oc[r]);
    const int hi = std::max(xc[r], oc[r]);
    for (int x = 2 * lo; x <= 2 * hi; ++x) canvas[r][x] = '-';
  }
  for (int c = 0; c < d; ++c) {
    const int lo = std::min(g.x_row(c), g.o_row(c));
    const int hi = std::max(g.x_row(c), g.o_row(c));
    for (int r = lo; r <= hi; ++r) canvas[r][2 * c] = canvas[r][2 * c] == '-' ? '+' : '|';
    canvas[g.x_row(c)][2 * c] = 'X';
    canvas[g.o_row(c)][2 * c] = 'O';
  }
  std::string out;
  for (int r = d - 1; r >= 0; --r) {
    auto line = canvas[r];
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line;
    out += '\n';
  }
  return out;
}

GridDiagram unknot2() { return GridDiagram::from_trusted({0, 1}, {1, 0}); }

}  // namespace knotmoney

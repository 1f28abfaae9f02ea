#include "knotmoney/state.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "knotmoney/alexander.hpp"
#include "knotmoney/error.hpp"

namespace knotmoney {

// ---------------------------------------------------------------- diagrams

DiagramState DiagramState::basis(const GridDiagram& g) {
  DiagramState s;
  s.add(g, 1.0);
  return s;
}

void DiagramState::add(const GridDiagram& g, double amp) {
  if (amp == 0) return;
  auto [it, inserted] = amps_.try_emplace(g, amp);
  if (!inserted) {
    it->second += amp;
    if (it->second == 0) amps_.erase(it);
  }
}

double DiagramState::amplitude(const GridDiagram& g) const {
  auto it = amps_.find(g);
  return it == amps_.end() ? 0.0 : it->second;
}

double DiagramState::norm2() const {
  double n = 0;
  for (const auto& [g, a] : amps_) n += a * a;
  return n;
}

DiagramState DiagramState::normalized() const {
  const double n = norm2();
  if (n == 0) throw Error(ErrorKind::ZeroProbability, "cannot normalise the zero state");
  const double inv = 1.0 / std::sqrt(n);
  DiagramState out;
  for (const auto& [g, a] : amps_) out.amps_.emplace_hint(out.amps_.end(), g, a * inv);
  return out;
}

double fidelity(const DiagramState& a, const DiagramState& b) {
  const double na = a.norm2(), nb = b.norm2();
  if (na == 0 || nb == 0) return 0;
  double dot = 0;
  const DiagramState& small = a.size() <= b.size() ? a : b;
  const DiagramState& large = a.size() <= b.size() ? b : a;
  for (const auto& [g, amp] : small) dot += amp * large.amplitude(g);
  return dot * dot / (na * nb);
}

// ---------------------------------------------------------------- labels

void LabelProfile::push(std::uint64_t begin, std::uint64_t end, double amp) {
  if (begin >= end || amp == 0) return;
  if (!runs_.empty() && runs_.back().end == begin && runs_.back().amp == amp) {
    runs_.back().end = end;
  } else {
    runs_.push_back({begin, end, amp});
  }
}

LabelProfile LabelProfile::uniform(std::uint64_t begin, std::uint64_t end, double amp) {
  LabelProfile p;
  p.push(begin, end, amp);
  return p;
}

LabelProfile LabelProfile::from_dense(std::span<const double> values) {
  LabelProfile p;
  std::uint64_t i = 0;
  while (i < values.size()) {
    std::uint64_t j = i + 1;
    while (j < values.size() && values[j] == values[i]) ++j;
    p.push(i, j, values[i]);
    i = j;
  }
  return p;
}

std::vector<double> LabelProfile::dense(std::uint64_t size) const {
  std::vector<double> out(size, 0.0);
  for (const auto& r : runs_) {
    for (std::uint64_t i = r.begin; i < std::min(r.end, size); ++i) out[i] = r.amp;
  }
  return out;
}

double LabelProfile::at(std::uint64_t label) const {
  auto it = std::upper_bound(runs_.begin(), runs_.end(), label,
                             [](std::uint64_t v, const LabelRun& r) { return v < r.end; });
  return (it != runs_.end() && it->begin <= label) ? it->amp : 0.0;
}

double LabelProfile::sum() const {
  double s = 0;
  for (const auto& r : runs_) s += r.amp * static_cast<double>(r.length());
  return s;
}

double LabelProfile::norm2() const {
  double s = 0;
  for (const auto& r : runs_) s += r.amp * r.amp * static_cast<double>(r.length());
  return s;
}

LabelProfile LabelProfile::restricted(std::uint64_t lo, std::uint64_t hi) const {
  LabelProfile p;
  for (const auto& r : runs_) p.push(std::max(r.begin, lo), std::min(r.end, hi), r.amp);
  return p;
}

LabelProfile LabelProfile::scaled(double s) const {
  LabelProfile p;
  if (s == 1.0) return *this;
  for (const auto& r : runs_) p.push(r.begin, r.end, r.amp * s);
  return p;
}

void LabelProfile::accumulate(const LabelProfile& other, double s) {
  if (other.runs_.empty() || s == 0) return;
  if (runs_.empty()) {
    *this = other.scaled(s);
    return;
  }
  LabelProfile out;
  std::size_t ia = 0, ib = 0;
  const auto& a = runs_;
  const auto& b = other.runs_;
  std::uint64_t pos = std::min(a[0].begin, b[0].begin);
  while (ia < a.size() || ib < b.size()) {
    // Skip runs already passed.
    if (ia < a.size() && a[ia].end <= pos) {
      ++ia;
      continue;
    }
    if (ib < b.size() && b[ib].end <= pos) {
      ++ib;
      continue;
    }
    const bool ina = ia < a.size() && a[ia].begin <= pos;
    const bool inb = ib < b.size() && b[ib].begin <= pos;
    if (!ina && !inb) {
      std::uint64_t next = UINT64_MAX;
      if (ia < a.size()) next = std::min(next, a[ia].begin);
      if (ib < b.size()) next = std::min(next, b[ib].begin);
      pos = next;
      continue;
    }
    std::uint64_t stop = UINT64_MAX;
    if (ina) stop = std::min(stop, a[ia].end);
    else if (ia < a.size()) stop = std::min(stop, a[ia].begin);
    if (inb) stop = std::min(stop, b[ib].end);
    else if (ib < b.size()) stop = std::min(stop, b[ib].begin);
    double v;
    if (ina && inb) v = a[ia].amp + s * b[ib].amp;
    else if (ina) v = a[ia].amp;
    else v = s * b[ib].amp;
    out.push(pos, stop, v);
    pos = stop;
  }
  runs_ = std::move(out.runs_);
}

LabelProfile LabelProfile::circular_average(std::uint64_t q, std::uint64_t w_count) const {
  if (q == 0 || runs_.empty()) return {};
  if (runs_.front().begin >= q) return {};
  const LabelProfile in = extent() > q ? restricted(0, q) : *this;
  // A constant vector is fixed by every shift.
  if (in.runs_.size() == 1 && in.runs_[0].begin == 0 && in.runs_[0].end == q) return in;

  const std::uint64_t m = w_count / q, r = w_count % q;
  const double total = in.sum();
  const double base = static_cast<double>(m) * total;
  const double denom = static_cast<double>(w_count);
  if (r == 0) return uniform(0, q, base / denom);

  // Window of the r shifts landing on label i covers source labels
  // i-r+1 .. i (cyclically). Summing the overlapping runs in a fixed order
  // gives bit-identical values wherever the overlap pattern repeats.
  const auto& rs = in.runs_;
  auto window_sum = [&](std::uint64_t lo, std::uint64_t hi) {  // [lo, hi), no wrap
    double acc = 0;
    auto it = std::upper_bound(rs.begin(), rs.end(), lo, [](std::uint64_t v, const LabelRun& run) { return v < run.end; });
    for (; it != rs.end() && it->begin < hi; ++it) {
      const std::uint64_t a = std::max(it->begin, lo), b = std::min(it->end, hi);
      acc += it->amp * static_cast<double>(b - a);
    }
    return acc;
  };
  LabelProfile out;
  for (std::uint64_t i = 0; i < q; ++i) {
    double w;
    if (i + 1 >= r) {
      w = window_sum(i + 1 - r, i + 1);
    } else {
      w = window_sum(q - (r - 1 - i), q) + window_sum(0, i + 1);
    }
    out.push(i, i + 1, (base + w) / denom);
  }
  return out;
}

// ---------------------------------------------------------------- configs

void ExpandedState::add(const GridDiagram& g, const LabelProfile& p, double scale) {
  if (p.empty() || scale == 0) return;
  auto it = amps_.find(g);
  if (it == amps_.end()) {
    amps_.emplace(g, p.scaled(scale));
  } else {
    it->second.accumulate(p, scale);
    if (it->second.empty()) amps_.erase(it);
  }
}

void ExpandedState::set(const GridDiagram& g, LabelProfile p) {
  if (p.empty()) {
    amps_.erase(g);
  } else {
    amps_.insert_or_assign(g, std::move(p));
  }
}

double ExpandedState::amplitude(const GridDiagram& g, std::uint64_t label) const {
  auto it = amps_.find(g);
  return it == amps_.end() ? 0.0 : it->second.at(label);
}

double ExpandedState::norm2() const {
  double n = 0;
  for (const auto& [g, p] : amps_) n += p.norm2();
  return n;
}

std::size_t ExpandedState::run_count() const {
  std::size_t n = 0;
  for (const auto& [g, p] : amps_) n += p.runs().size();
  return n;
}

ExpandedState expand(const DiagramState& s, const QTable& qt) {
  ExpandedState out;
  for (const auto& [g, a] : s) {
    const std::uint64_t q = qt.q(g.dim());
    if (q == 0) {
      throw Error(ErrorKind::InvalidParameter,
                  "diagram of dimension " + std::to_string(g.dim()) + " has no labels at Dbar=" + std::to_string(qt.dbar()));
    }
    out.set(g, LabelProfile::uniform(0, q, a / std::sqrt(static_cast<double>(q))));
  }
  return out;
}

Contraction contract(const ExpandedState& s, const QTable& qt) {
  Contraction c;
  for (const auto& [g, p] : s) {
    const std::uint64_t q = qt.q(g.dim());
    const double n2 = p.norm2();
    if (q == 0) {
      c.residual += n2;
      continue;
    }
    const LabelProfile inside = p.extent() > q ? p.restricted(0, q) : p;
    const double coeff = inside.sum() / std::sqrt(static_cast<double>(q));
    c.state.add(g, coeff);
    c.residual += std::max(0.0, n2 - coeff * coeff);
  }
  return c;
}

// ---------------------------------------------------------------- measurement

const SerialPolynomial& AlexanderCache::operator()(const GridDiagram& g) {
  auto it = cache_.find(g);
  if (it == cache_.end()) it = cache_.emplace(g, alexander(g)).first;
  return it->second;
}

namespace {

template <class Pred>
Measurement project(const DiagramState& s, Pred keep) {
  Measurement m;
  DiagramState kept;
  for (const auto& [g, a] : s) {
    if (keep(g)) kept.add(g, a);
  }
  const double total = s.norm2();
  m.probability = total == 0 ? 0.0 : kept.norm2() / total;
  if (m.probability > 0) m.post = kept.normalized();
  return m;
}

}  // namespace

double alexander_probability(const DiagramState& s, const SerialPolynomial& p, AlexanderCache* cache) {
  AlexanderCache local;
  AlexanderCache& c = cache ? *cache : local;
  return project(s, [&](const GridDiagram& g) { return c(g) == p; }).probability;
}

Measurement measure_alexander(const DiagramState& s, const SerialPolynomial& p, AlexanderCache* cache) {
  AlexanderCache local;
  AlexanderCache& c = cache ? *cache : local;
  Measurement m = project(s, [&](const GridDiagram& g) { return c(g) == p; });
  if (m.probability == 0) throw Error(ErrorKind::ZeroProbability, "no support with serial " + p.to_string());
  return m;
}

double dimension_probability(const DiagramState& s, int dbar) {
  const int lo = (dbar + 1) / 2, hi = (3 * dbar) / 2;
  return project(s, [&](const GridDiagram& g) { return g.dim() >= lo && g.dim() <= hi; }).probability;
}

Measurement project_dimension(const DiagramState& s, int dbar) {
  const int lo = (dbar + 1) / 2, hi = (3 * dbar) / 2;
  Measurement m = project(s, [&](const GridDiagram& g) { return g.dim() >= lo && g.dim() <= hi; });
  if (m.probability == 0) {
    throw Error(ErrorKind::ZeroProbability,
                "no support in dimensions [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return m;
}

// ---------------------------------------------------------------- dumps

namespace {

void dump_line(std::string& out, const GridDiagram& g, std::uint64_t b, std::uint64_t e, double amp) {
  char buf[64];
  std::snprintf(buf, sizeof buf, " %llu %llu %.17g\n", static_cast<unsigned long long>(b),
                static_cast<unsigned long long>(e), amp);
  out += to_hex(encode(g));
  out += buf;
}

struct DumpLine {
  GridDiagram g;
  std::uint64_t begin, end;
  double amp;
};

template <class Fn>
void parse_lines(std::string_view text, Fn fn) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string hex, tail;
    unsigned long long b = 0, e = 0;
    double amp = 0;
    if (!(ls >> hex >> b >> e >> amp) || (ls >> tail) || b >= e || !std::isfinite(amp)) {
      throw Error(ErrorKind::MalformedFile, "bad state line " + std::to_string(lineno));
    }
    try {
      fn(DumpLine{decode(from_hex(hex)), b, e, amp});
    } catch (const Error& err) {
      if (err.kind() == ErrorKind::MalformedFile) throw;
      throw Error(ErrorKind::MalformedFile, "line " + std::to_string(lineno) + ": " + err.what());
    }
  }
}

}  // namespace

std::string dump(const DiagramState& s) {
  std::string out;
  for (const auto& [g, a] : s) dump_line(out, g, 0, 1, a);
  return out;
}

std::string dump(const ExpandedState& s) {
  std::string out;
  for (const auto& [g, p] : s) {
    for (const auto& r : p.runs()) dump_line(out, g, r.begin, r.end, r.amp);
  }
  return out;
}

DiagramState parse_diagram_dump(std::string_view text) {
  DiagramState s;
  parse_lines(text, [&](const DumpLine& l) {
    if (l.begin != 0 || l.end != 1) throw Error(ErrorKind::MalformedFile, "diagram state line must use interval 0 1");
    if (s.amplitude(l.g) != 0) throw Error(ErrorKind::MalformedFile, "duplicate diagram " + to_text(l.g));
    s.add(l.g, l.amp);
  });
  return s;
}

ExpandedState parse_expanded_dump(std::string_view text) {
  ExpandedState s;
  parse_lines(text, [&](const DumpLine& l) {
    const auto it = s.entries().find(l.g);
    if (it != s.entries().end() && it->second.extent() > l.begin) {
      throw Error(ErrorKind::MalformedFile, "overlapping or unsorted intervals for " + to_text(l.g));
    }
    s.add(l.g, LabelProfile::uniform(l.begin, l.end, l.amp));
  });
  return s;
}

}  // namespace knotmoney

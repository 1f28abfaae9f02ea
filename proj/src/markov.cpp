#include "knotmoney/markov.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "knotmoney/error.hpp"
#include "knotmoney/kernels.hpp"
#include "knotmoney/moves.hpp"

namespace knotmoney {

std::string to_string(const MoveId& s) {
  std::ostringstream out;
  out << "j=" << s.j;
  switch (s.j) {
    case 1: out << ",w=" << s.w; break;
    case 6: out << ",x=" << s.x; break;
    case 7: out << ",y=" << s.y; break;
    case 8: out << ",x=" << s.x << ",y=" << s.y << ",k=" << s.k; break;
    default: break;
  }
  return out.str();
}

MoveId parse_move(std::string_view spec) {
  MoveId s;
  bool have_j = false;
  auto bad = [&](const std::string& why) {
    return Error(ErrorKind::InvalidParameter, "bad move '" + std::string(spec) + "': " + why);
  };
  while (!spec.empty()) {
    const auto comma = spec.find(',');
    const std::string_view item = spec.substr(0, comma);
    spec = comma == std::string_view::npos ? std::string_view{} : spec.substr(comma + 1);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw bad("expected key=value");
    const std::string_view key = item.substr(0, eq), val = item.substr(eq + 1);
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
    if (ec != std::errc{} || p != val.data() + val.size()) throw bad("non-numeric value");
    if (key == "j") {
      s.j = static_cast<int>(v);
      have_j = true;
    } else if (key == "w") {
      s.w = v;
    } else if (key == "x") {
      s.x = static_cast<int>(v);
    } else if (key == "y") {
      s.y = static_cast<int>(v);
    } else if (key == "k") {
      s.k = static_cast<int>(v);
    } else {
      throw bad("unknown key");
    }
  }
  if (!have_j || s.j < 1 || s.j > 8) throw bad("j must be in 1..8");
  if (s.k > 3) throw bad("k must be in 0..3");
  return s;
}

ChainContext::ChainContext(int dbar) : qt_(dbar) {
  w_count_ = qt_.w_count();
  q_max_ = qt_.q_max();
  q_.assign(qt_.dmax() + 1, 0);
  for (int d = 2; d <= qt_.dmax(); ++d) q_[d] = qt_.q(d);
}

std::optional<GridDiagram> move_target(const GridDiagram& g, const MoveId& s, int span) {
  switch (s.j) {
    case 2: return cyclic(g, Axis::Columns, +1);
    case 3: return cyclic(g, Axis::Columns, -1);
    case 4: return cyclic(g, Axis::Rows, +1);
    case 5: return cyclic(g, Axis::Rows, -1);
    case 6:
      if (s.x < 0 || s.x >= span || !transpose_legal(g, Axis::Columns, s.x)) return std::nullopt;
      return transpose(g, Axis::Columns, s.x);
    case 7:
      if (s.y < 0 || s.y >= span || !transpose_legal(g, Axis::Rows, s.y)) return std::nullopt;
      return transpose(g, Axis::Rows, s.y);
    case 8: {
      if (s.x < 0 || s.y < 0 || s.x >= span || s.y >= span || s.k < 0 || s.k > 3) return std::nullopt;
      if (auto r = try_stabilize(g, s.x, s.y, s.k)) return r;
      return try_destabilize(g, s.x, s.y, s.k);
    }
    default: return std::nullopt;
  }
}

Config apply_move(const Config& c, const MoveId& s, const ChainContext& ctx) {
  if (s.j == 1) {
    const std::uint64_t q = ctx.q(c.g.dim());
    return Config{c.g, (c.label + s.w % q) % q};
  }
  auto t = move_target(c.g, s, ctx.span());
  if (!t) return c;
  if (s.j == 8 && !(c.label < ctx.q(t->dim()))) return c;
  return Config{std::move(*t), c.label};
}

MoveId random_move(Rng& rng, const ChainContext& ctx) {
  MoveId s;
  s.j = 1 + static_cast<int>(uniform_below(rng, 8));
  s.w = uniform_below(rng, ctx.w_count());
  s.x = static_cast<int>(uniform_below(rng, ctx.span()));
  s.y = static_cast<int>(uniform_below(rng, ctx.span()));
  s.k = static_cast<int>(uniform_below(rng, 4));
  return s;
}

Config chain_step(const Config& c, Rng& rng, const ChainContext& ctx) { return apply_move(c, random_move(rng, ctx), ctx); }

std::vector<Config> enumerate_configs(const ChainContext& ctx, std::size_t cap) {
  const BigInt total = ctx.qtable().config_count();
  if (total > cap) {
    throw Error(ErrorKind::SpaceTooLarge, "configuration space has " + total.str() + " elements (cap " + std::to_string(cap) + ")");
  }
  const ConfigSpace space(ctx, cap);
  std::vector<Config> out;
  out.reserve(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) out.push_back(space.config(i));
  return out;
}

bool is_permutation_check(const MoveId& s, const ChainContext& ctx, std::size_t cap) {
  const ConfigSpace space(ctx, cap);
  std::vector<bool> hit(space.size(), false);
  for (std::size_t i = 0; i < space.size(); ++i) {
    const Config out = apply_move(space.config(i), s, ctx);
    if (!ctx.valid(out)) return false;
    const std::size_t k = space.index(out);
    if (hit[k]) return false;
    hit[k] = true;
  }
  return true;
}

ChainRun run_chain(const Config& start, std::uint64_t steps, Rng& rng, const ChainContext& ctx) {
  if (!ctx.valid(start)) throw Error(ErrorKind::InvalidParameter, "start configuration outside the chain's space");
  ChainRun run{start, {}};
  std::unordered_set<GridDiagram, GridDiagramHash> seen{start.g};
  for (std::uint64_t t = 0; t < steps; ++t) {
    const MoveId s = random_move(rng, ctx);
    Config next = apply_move(run.final, s, ctx);
    ++run.stats.proposed[s.j - 1];
    if (next != run.final) ++run.stats.accepted[s.j - 1];
    run.final = std::move(next);
    ++run.stats.dimension_histogram[run.final.g.dim()];
    seen.insert(run.final.g);
  }
  run.stats.steps = steps;
  run.stats.distinct_diagrams = seen.size();
  return run;
}

std::string format_stats(const ChainStats& s) {
  std::ostringstream out;
  out << "steps " << s.steps << "\n";
  for (int j = 0; j < 8; ++j) {
    out << "move j=" << (j + 1) << " proposed " << s.proposed[j] << " accepted " << s.accepted[j] << "\n";
  }
  for (const auto& [d, n] : s.dimension_histogram) out << "dimension " << d << " " << n << "\n";
  out << "distinct_diagrams " << s.distinct_diagrams << "\n";
  return out.str();
}

// ---------------------------------------------------------------- B operator

const std::vector<MarkovOperator::Transition>& MarkovOperator::transitions(const GridDiagram& g) {
  auto it = cache_.find(g);
  if (it != cache_.end()) return it->second;

  std::map<std::pair<GridDiagram, std::uint64_t>, double> merged;
  auto add = [&](const std::optional<GridDiagram>& t, std::uint64_t gate, double w) {
    if (!t) {
      merged[{g, UINT64_MAX}] += w;
    } else if (gate == 0) {
      merged[{g, UINT64_MAX}] += w;  // gate closed for every label
    } else {
      merged[{*t, gate}] += w;
    }
  };
  const int span = ctx_.span();
  for (int j = 2; j <= 5; ++j) add(move_target(g, MoveId{j, 0, 0, 0, 0}, span), UINT64_MAX, 1.0 / 8);
  for (int x = 0; x < span; ++x) {
    add(move_target(g, MoveId{6, 0, x, 0, 0}, span), UINT64_MAX, 1.0 / (8.0 * span));
    add(move_target(g, MoveId{7, 0, 0, x, 0}, span), UINT64_MAX, 1.0 / (8.0 * span));
  }
  const double w8 = 1.0 / (8.0 * 4.0 * span * span);
  for (int k = 0; k < 4; ++k) {
    for (int x = 0; x < span; ++x) {
      for (int y = 0; y < span; ++y) {
        auto t = move_target(g, MoveId{8, 0, x, y, k}, span);
        add(t, t ? ctx_.q(t->dim()) : UINT64_MAX, w8);
      }
    }
  }
  std::vector<Transition> list;
  list.reserve(merged.size());
  for (auto& [key, w] : merged) {
    // A gate at or above every label of g is an ungated move.
    const std::uint64_t gate = key.second >= ctx_.q(g.dim()) ? UINT64_MAX : key.second;
    if (!list.empty() && list.back().target == key.first && list.back().gate == gate) {
      list.back().weight += w;
    } else {
      list.push_back({key.first, gate, w});
    }
  }
  return cache_.emplace(g, std::move(list)).first->second;
}

ExpandedState MarkovOperator::apply(const ExpandedState& s) {
  ExpandedState out;
  for (const auto& [g, profile] : s) {
    const std::uint64_t q = ctx_.q(g.dim());
    out.add(g, profile.circular_average(q, ctx_.w_count()), 1.0 / 8);
    for (const Transition& t : transitions(g)) {
      if (t.gate == UINT64_MAX) {
        out.add(t.target, profile, t.weight);
      } else {
        out.add(t.target, profile.restricted(0, t.gate), t.weight);
        out.add(g, profile.restricted(t.gate, UINT64_MAX), t.weight);
      }
    }
  }
  return out;
}

ExpandedState apply_B(const ExpandedState& s, const ChainContext& ctx) {
  MarkovOperator op(ctx);
  return op.apply(s);
}

// ---------------------------------------------------------------- dense route

std::vector<double> SparseMatrix::multiply(const std::vector<double>& x) const {
  const auto& k = kernels::active();
  std::vector<double> y(n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto b = row_ptr[r], e = row_ptr[r + 1];
    y[r] = k.gather_dot(val.data() + b, x.data(), col.data() + b, static_cast<std::size_t>(e - b));
  }
  return y;
}

std::vector<double> SparseMatrix::row_sums() const {
  std::vector<double> s(n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (auto i = row_ptr[r]; i < row_ptr[r + 1]; ++i) s[r] += val[i];
  }
  return s;
}

std::vector<double> SparseMatrix::col_sums() const {
  std::vector<double> s(n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (auto i = row_ptr[r]; i < row_ptr[r + 1]; ++i) s[col[i]] += val[i];
  }
  return s;
}

double SparseMatrix::asymmetry() const {
  std::map<std::pair<std::int32_t, std::int32_t>, double> entries;
  for (std::size_t r = 0; r < n; ++r) {
    for (auto i = row_ptr[r]; i < row_ptr[r + 1]; ++i) entries[{static_cast<std::int32_t>(r), col[i]}] = val[i];
  }
  double worst = 0;
  for (const auto& [rc, v] : entries) {
    auto it = entries.find({rc.second, rc.first});
    const double other = it == entries.end() ? 0.0 : it->second;
    worst = std::max(worst, std::abs(v - other));
  }
  return worst;
}

ConfigSpace::ConfigSpace(const ChainContext& ctx, std::size_t cap) : ctx_(ctx) {
  const BigInt total = ctx.qtable().config_count();
  if (total > cap) {
    throw Error(ErrorKind::SpaceTooLarge, "configuration space has " + total.str() + " elements (cap " + std::to_string(cap) + ")");
  }
  for (int d = 2; d <= ctx.dmax(); ++d) {
    std::vector<std::uint16_t> x(d), o(d);
    std::iota(x.begin(), x.end(), 0);
    do {
      std::iota(o.begin(), o.end(), 0);
      do {
        bool ok = true;
        for (int c = 0; c < d && ok; ++c) ok = x[c] != o[c];
        if (ok) diagrams_.push_back(GridDiagram::from_trusted(x, o));
      } while (std::next_permutation(o.begin(), o.end()));
    } while (std::next_permutation(x.begin(), x.end()));
  }
  for (const auto& g : diagrams_) {
    slot_.emplace(g, offset_.size());
    offset_.push_back(total_);
    total_ += ctx.q(g.dim());
  }
}

std::size_t ConfigSpace::index(const Config& c) const {
  auto it = slot_.find(c.g);
  if (it == slot_.end() || c.label >= ctx_.q(c.g.dim())) {
    throw Error(ErrorKind::InvalidParameter, "configuration outside the space");
  }
  return offset_[it->second] + c.label;
}

Config ConfigSpace::config(std::size_t i) const {
  const auto pos = std::upper_bound(offset_.begin(), offset_.end(), i) - offset_.begin() - 1;
  return Config{diagrams_[pos], i - offset_[pos]};
}

std::vector<double> ConfigSpace::to_dense(const ExpandedState& s) const {
  std::vector<double> v(total_, 0.0);
  for (const auto& [g, p] : s) {
    const std::size_t base = offset_[slot_.at(g)];
    const std::uint64_t q = ctx_.q(g.dim());
    for (const auto& r : p.runs()) {
      if (r.end > q) throw Error(ErrorKind::InvalidParameter, "label beyond q(d) in " + to_text(g));
      for (std::uint64_t i = r.begin; i < r.end; ++i) v[base + i] = r.amp;
    }
  }
  return v;
}

ExpandedState ConfigSpace::from_dense(const std::vector<double>& v) const {
  ExpandedState s;
  for (std::size_t k = 0; k < diagrams_.size(); ++k) {
    const std::uint64_t q = ctx_.q(diagrams_[k].dim());
    s.set(diagrams_[k], LabelProfile::from_dense(std::span<const double>(v.data() + offset_[k], q)));
  }
  return s;
}

SparseMatrix assemble_B(const ConfigSpace& space, const ChainContext& ctx) {
  struct Entry {
    std::int32_t row, col;
    double val;
  };
  std::vector<Entry> entries;
  const int span = ctx.span();
  const double wc = static_cast<double>(ctx.w_count());
  for (std::size_t i = 0; i < space.size(); ++i) {
    const Config c = space.config(i);
    const auto col = static_cast<std::int32_t>(i);
    auto put = [&](const MoveId& s, double w) {
      entries.push_back({static_cast<std::int32_t>(space.index(apply_move(c, s, ctx))), col, w});
    };
    const std::uint64_t q = ctx.q(c.g.dim());
    for (std::uint64_t t = 0; t < q; ++t) {
      const std::uint64_t count = (ctx.w_count() - 1 - t) / q + 1;
      put(MoveId{1, t, 0, 0, 0}, static_cast<double>(count) / wc / 8.0);
    }
    for (int j = 2; j <= 5; ++j) put(MoveId{j, 0, 0, 0, 0}, 1.0 / 8);
    for (int x = 0; x < span; ++x) {
      put(MoveId{6, 0, x, 0, 0}, 1.0 / (8.0 * span));
      put(MoveId{7, 0, 0, x, 0}, 1.0 / (8.0 * span));
    }
    for (int k = 0; k < 4; ++k) {
      for (int x = 0; x < span; ++x) {
        for (int y = 0; y < span; ++y) put(MoveId{8, 0, x, y, k}, 1.0 / (8.0 * 4.0 * span * span));
      }
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
  SparseMatrix m;
  m.n = space.size();
  m.row_ptr.assign(m.n + 1, 0);
  for (std::size_t i = 0; i < entries.size();) {
    std::size_t j = i;
    double v = 0;
    while (j < entries.size() && entries[j].row == entries[i].row && entries[j].col == entries[i].col) v += entries[j++].val;
    m.col.push_back(entries[i].col);
    m.val.push_back(v);
    ++m.row_ptr[entries[i].row + 1];
    i = j;
  }
  for (std::size_t r = 0; r < m.n; ++r) m.row_ptr[r + 1] += m.row_ptr[r];
  return m;
}

}  // namespace knotmoney

#include "magma/search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <chrono>
#include <map>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace magma {

std::vector<Op> ConstraintSet::synthesized_ops() const {
  bool used[kOpCount] = {};
  used[op_index(Op::mul)] = true;
  for (const auto& c : constraints) c.collect_ops(used);
  std::vector<Op> ops;
  for (int t = 0; t < kOpCount; ++t)
    if (used[t]) ops.push_back(static_cast<Op>(t));
  return ops;
}

namespace {

constexpr int kMaxSearchOrder = 12;
constexpr int kMaxVars = 6;

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

struct CompiledNode {
  std::int16_t left = -1;
  std::int16_t right = -1;
  std::int8_t slot = -1;  // table slot for applications
  std::int8_t var = -1;   // >= 0: leaf, index into the instance assignment
};

struct CompiledIdentity {
  std::vector<CompiledNode> nodes;  // children precede parents
  std::int16_t lhs_root = -1;
  std::int16_t rhs_root = -1;
  int nvars = 0;
};

struct GroundInstance {
  std::int16_t ident;
  std::array<std::int8_t, kMaxVars> values;
};

struct EvalResult {
  int value;  // decided value, when stuck < 0
  int stuck;  // undecided cell index, or -1
};

// Search state: one candidate bitmask and one decided value per cell, plus
// one "satisfied" bit per ground instance.  Copied whole on branching.
struct State {
  std::vector<std::uint32_t> dom;
  std::vector<std::int8_t> val;
  std::vector<std::uint64_t> done;
  int assigned = 0;
  int branch_hint = 0;
};

class Engine {
 public:
  Engine(const ConstraintSet& cs, const SearchOptions& options)
      : cs_(cs), options_(options), n_(cs.order) {
    if (n_ < 1) throw std::invalid_argument("search order must be positive");
    if (n_ > kMaxSearchOrder)
      throw std::invalid_argument("search supports orders up to " +
                                  std::to_string(kMaxSearchOrder));

    for (int t = 0; t < kOpCount; ++t) slot_of_op_[t] = -1;
    for (Op op : cs.synthesized_ops()) {
      slot_of_op_[op_index(op)] = static_cast<int>(slot_ops_.size());
      slot_ops_.push_back(op);
    }
    cells_ = static_cast<int>(slot_ops_.size()) * n_ * n_;

    for (const auto& c : cs.constraints) {
      if (c.kind == Constraint::Kind::structural && !c.negated) {
        switch (c.property) {
          case StructuralProperty::left_cancellative:
          case StructuralProperty::left_division:
            row_alldiff_ = true;
            break;
          case StructuralProperty::right_cancellative:
          case StructuralProperty::right_division:
            col_alldiff_ = true;
            break;
          case StructuralProperty::quasigroup:
            row_alldiff_ = true;
            col_alldiff_ = true;
            break;
          case StructuralProperty::commutative:
            mirror_ = true;
            break;
          case StructuralProperty::associative:
            compile_identity(parse_identity(laws::associativity));
            break;
          default:
            break;  // existence-style predicates: completed-table check only
        }
      } else if (c.kind == Constraint::Kind::identity && !c.negated) {
        compile_identity(*c.identity);
      }
      // Negated constraints are checked on completed tables only; pruning
      // against them would need full lookahead to stay complete.
    }
    build_instances();
    budget_ = options.node_budget;
  }

  const std::vector<Op>& slot_ops() const { return slot_ops_; }

  bool prepare() {
    root_.dom.assign(static_cast<std::size_t>(cells_), full_mask());
    root_.val.assign(static_cast<std::size_t>(cells_), -1);
    root_.done.assign((insts_.size() + 63) / 64, 0);
    root_.assigned = 0;
    root_.branch_hint = 0;

    if (options_.fix_first_row && has_quasigroup_constraint()) {
      for (int j = 0; j < n_; ++j)
        if (!set_value(root_, cell_index(0, 0, j), j)) return false;
    }
    return drain(root_);
  }

  const State& root() const { return root_; }

  int first_undecided(const State& s) const {
    for (int c = s.branch_hint; c < cells_; ++c)
      if (s.val[static_cast<std::size_t>(c)] < 0) return c;
    return -1;
  }

  using EmitFn = std::function<bool(const Algebra&)>;

  // Full search below the prepared root.  Returns false when the node
  // budget ran out.
  bool run(const EmitFn& emit) {
    init_stack();
    stack_[0] = root_;
    complete_ = true;
    stop_ = false;
    dfs(0, emit);
    return complete_;
  }

  // Search restricted to first_cell := value; used by the parallel driver.
  bool run_branch(int cell, int value, const EmitFn& emit) {
    init_stack();
    complete_ = true;
    stop_ = false;
    ++stats.nodes;
    stack_[1] = root_;
    if (commit(stack_[1], cell, value)) dfs(1, emit);
    return complete_;
  }

  void set_cancel_flag(const std::atomic<bool>* cancel) { cancel_ = cancel; }

  SearchStats stats;

  // Diagnostic: domains of the * table after forcing the given assignments.
  std::optional<std::vector<std::vector<int>>> probe(
      const std::vector<std::tuple<Op, int, int, int>>& assignments) {
    if (!prepare()) return std::nullopt;
    for (const auto& [op, i, j, v] : assignments) {
      int slot = slot_of_op_[op_index(op)];
      if (slot < 0) throw std::invalid_argument("operation not synthesized");
      if (!commit(root_, cell_index(slot, i, j), v)) return std::nullopt;
    }
    std::vector<std::vector<int>> out(
        static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        auto& cell = out[static_cast<std::size_t>(i * n_ + j)];
        std::uint32_t dom =
            root_.dom[static_cast<std::size_t>(cell_index(0, i, j))];
        for (int v = 0; v < n_; ++v)
          if (dom & (1u << v)) cell.push_back(v);
      }
    return out;
  }

 private:
  std::uint32_t full_mask() const { return (n_ == 32) ? ~0u : (1u << n_) - 1; }

  int cell_index(int slot, int i, int j) const {
    return (slot * n_ + i) * n_ + j;
  }

  bool has_quasigroup_constraint() const {
    for (const auto& c : cs_.constraints)
      if (c.kind == Constraint::Kind::structural && !c.negated &&
          c.property == StructuralProperty::quasigroup)
        return true;
    return false;
  }

  void compile_identity(const Identity& ident) {
    CompiledIdentity ci;
    std::vector<std::string> vars = ident.variables();
    if (vars.size() > kMaxVars)
      throw std::invalid_argument("identity has too many variables");
    ci.nvars = static_cast<int>(vars.size());
    auto var_slot = [&vars](const std::string& name) {
      return static_cast<std::int8_t>(
          std::find(vars.begin(), vars.end(), name) - vars.begin());
    };
    auto compile = [&](const Term& t, auto&& self) -> std::int16_t {
      CompiledNode node;
      if (t.is_variable()) {
        node.var = var_slot(t.variable_name());
      } else {
        node.left = self(t.left(), self);
        node.right = self(t.right(), self);
        node.slot = static_cast<std::int8_t>(slot_of_op_[op_index(t.op())]);
      }
      ci.nodes.push_back(node);
      return static_cast<std::int16_t>(ci.nodes.size() - 1);
    };
    ci.lhs_root = compile(ident.lhs, compile);
    ci.rhs_root = compile(ident.rhs, compile);
    idents_.push_back(std::move(ci));
  }

  void build_instances() {
    for (std::size_t id = 0; id < idents_.size(); ++id) {
      const int k = idents_[id].nvars;
      GroundInstance gi;
      gi.ident = static_cast<std::int16_t>(id);
      gi.values.fill(0);
      while (true) {
        insts_.push_back(gi);
        int i = k;
        bool carried = true;
        while (i > 0 && carried) {
          --i;
          if (++gi.values[static_cast<std::size_t>(i)] < n_) {
            carried = false;
          } else {
            gi.values[static_cast<std::size_t>(i)] = 0;
          }
        }
        if (k == 0 || carried) break;
      }
    }
  }

  void init_stack() {
    if (stack_.size() != static_cast<std::size_t>(cells_) + 2)
      stack_.assign(static_cast<std::size_t>(cells_) + 2, root_);
  }

  bool inst_done(const State& s, std::size_t idx) const {
    return s.done[idx >> 6] & (1ull << (idx & 63));
  }

  void mark_done(State& s, std::size_t idx) const {
    s.done[idx >> 6] |= 1ull << (idx & 63);
  }

  bool set_value(State& s, int cell, int v) {
    auto c = static_cast<std::size_t>(cell);
    if (s.val[c] >= 0) return s.val[c] == v;
    if (!(s.dom[c] & (1u << v))) return false;
    s.val[c] = static_cast<std::int8_t>(v);
    s.dom[c] = 1u << v;
    ++s.assigned;
    queue_.push_back(cell);
    return true;
  }

  bool narrow_to(State& s, int cell, std::uint32_t mask) {
    auto c = static_cast<std::size_t>(cell);
    std::uint32_t next = s.dom[c] & mask;
    if (next == s.dom[c]) return true;
    if (next == 0) return false;
    s.dom[c] = next;
    touched_ = true;
    if (s.val[c] < 0 && std::popcount(next) == 1) {
      s.val[c] = static_cast<std::int8_t>(std::countr_zero(next));
      ++s.assigned;
      queue_.push_back(cell);
    }
    return true;
  }

  // Row/column all-different and commutative mirroring for a decided cell.
  bool structural_step(State& s, int cell) {
    int slot = cell / (n_ * n_);
    int rem = cell - slot * n_ * n_;
    int i = rem / n_;
    int j = rem - i * n_;
    const int v = s.val[static_cast<std::size_t>(cell)];
    const std::uint32_t strip = ~(1u << v);
    if (slot == 0) {
      if (row_alldiff_)
        for (int jj = 0; jj < n_; ++jj)
          if (jj != j && !narrow_to(s, cell_index(0, i, jj), strip))
            return false;
      if (col_alldiff_)
        for (int ii = 0; ii < n_; ++ii)
          if (ii != i && !narrow_to(s, cell_index(0, ii, j), strip))
            return false;
      if (mirror_ && i != j && !narrow_to(s, cell_index(0, j, i), 1u << v))
        return false;
    }
    return true;
  }

  EvalResult eval(const State& s, const CompiledIdentity& ci,
                  std::int16_t node, const std::int8_t* vals, int assume_cell,
                  int assume_val) const {
    const CompiledNode& nd = ci.nodes[static_cast<std::size_t>(node)];
    if (nd.var >= 0)
      return {vals[static_cast<std::size_t>(nd.var)], -1};
    EvalResult l = eval(s, ci, nd.left, vals, assume_cell, assume_val);
    if (l.stuck >= 0) return l;
    EvalResult r = eval(s, ci, nd.right, vals, assume_cell, assume_val);
    if (r.stuck >= 0) return r;
    int cell = cell_index(nd.slot, l.value, r.value);
    int v = cell == assume_cell ? assume_val
                                : s.val[static_cast<std::size_t>(cell)];
    if (v < 0) return {-1, cell};
    return {v, -1};
  }

  // Ground-instance filtering.  A fully decided instance either passes (and
  // is retired) or signals a contradiction.  When evaluation sticks at a
  // single undecided cell, every candidate value whose assumption decides
  // the instance to a mismatch is pruned.
  bool check_instance(State& s, std::size_t idx) {
    const GroundInstance& gi = insts_[idx];
    const CompiledIdentity& ci = idents_[static_cast<std::size_t>(gi.ident)];
    const std::int8_t* vals = gi.values.data();
    EvalResult l = eval(s, ci, ci.lhs_root, vals, -1, 0);
    EvalResult r = eval(s, ci, ci.rhs_root, vals, -1, 0);

    if (l.stuck < 0 && r.stuck < 0) {
      if (l.value != r.value) return false;
      mark_done(s, idx);
      return true;
    }

    int cell;
    if (l.stuck >= 0 && r.stuck >= 0) {
      if (l.stuck != r.stuck) return true;
      cell = l.stuck;
    } else {
      cell = l.stuck >= 0 ? l.stuck : r.stuck;
    }

    std::uint32_t dom = s.dom[static_cast<std::size_t>(cell)];
    std::uint32_t keep = 0;
    for (int v = 0; v < n_; ++v) {
      if (!(dom & (1u << v))) continue;
      EvalResult l2 = eval(s, ci, ci.lhs_root, vals, cell, v);
      EvalResult r2 = eval(s, ci, ci.rhs_root, vals, cell, v);
      if (l2.stuck >= 0 || r2.stuck >= 0 || l2.value == r2.value)
        keep |= 1u << v;
    }
    return narrow_to(s, cell, keep);
  }

  // Propagate to fixpoint: drain decided cells through the structural
  // rules, then sweep the live instances; repeat while anything changed.
  bool drain(State& s) {
    while (true) {
      touched_ = false;
      while (!queue_.empty()) {
        int cell = queue_.back();
        queue_.pop_back();
        if (!structural_step(s, cell)) {
          queue_.clear();
          return false;
        }
      }
      for (std::size_t i = 0; i < insts_.size(); ++i) {
        if (inst_done(s, i)) continue;
        if (!check_instance(s, i)) {
          queue_.clear();
          return false;
        }
      }
      if (!queue_.empty()) continue;
      if (!touched_) return true;
    }
  }

  bool commit(State& s, int cell, int v) {
    if (!set_value(s, cell, v)) {
      queue_.clear();
      return false;
    }
    return drain(s);
  }

  Algebra to_algebra(const State& s) const {
    Algebra a(n_);
    for (std::size_t t = 0; t < slot_ops_.size(); ++t) {
      Table table(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_));
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
          table[static_cast<std::size_t>(i * n_ + j)] =
              s.val[static_cast<std::size_t>(
                  cell_index(static_cast<int>(t), i, j))];
      a.set_table(slot_ops_[t], std::move(table));
    }
    return a;
  }

  bool handle_leaf(const State& s, const EmitFn& emit) {
    Algebra a = to_algebra(s);
    // Independent re-verification of every constraint; only constraint
    // kinds that do not propagate can reject a leaf.
    for (const auto& c : cs_.constraints)
      if (!satisfies(a, c)) return true;
    ++stats.models;
    if (!emit(a)) {
      stop_ = true;
      return false;
    }
    return true;
  }

  bool dfs(int depth, const EmitFn& emit) {
    State& s = stack_[static_cast<std::size_t>(depth)];
    if (s.assigned == cells_) return handle_leaf(s, emit);
    int cell = first_undecided(s);
    s.branch_hint = cell;
    const std::uint32_t dom = s.dom[static_cast<std::size_t>(cell)];
    State& child = stack_[static_cast<std::size_t>(depth) + 1];
    for (int v = 0; v < n_; ++v) {
      if (!(dom & (1u << v))) continue;
      if (stop_) return false;
      if (cancel_ && cancel_->load(std::memory_order_relaxed)) {
        stop_ = true;
        return false;
      }
      ++stats.nodes;
      if (budget_ && stats.nodes > budget_) {
        complete_ = false;
        return false;
      }
      child = s;
      child.branch_hint = cell + 1;
      if (commit(child, cell, v)) {
        if (!dfs(depth + 1, emit)) return false;
      }
    }
    return true;
  }

  ConstraintSet cs_;
  SearchOptions options_;
  int n_;
  int cells_ = 0;
  int slot_of_op_[kOpCount];
  std::vector<Op> slot_ops_;
  bool row_alldiff_ = false;
  bool col_alldiff_ = false;
  bool mirror_ = false;
  std::vector<CompiledIdentity> idents_;
  std::vector<GroundInstance> insts_;
  State root_;
  std::vector<State> stack_;
  std::vector<int> queue_;
  bool touched_ = false;
  bool stop_ = false;
  bool complete_ = true;
  std::uint64_t budget_ = 0;
  const std::atomic<bool>* cancel_ = nullptr;
};

}  // namespace

bool search_stream(const ConstraintSet& cs, const SearchOptions& options,
                   const std::function<bool(const Algebra&)>& on_model,
                   SearchStats& stats) {
  auto start = Clock::now();
  Engine engine(cs, options);
  bool complete = true;
  if (!engine.prepare()) {
    stats = engine.stats;
    stats.millis = elapsed_ms(start);
    return true;
  }

  int branch_cell = engine.first_undecided(engine.root());
  int threads = std::max(1, options.threads);
#ifndef _OPENMP
  threads = 1;
#endif

  if (threads <= 1 || branch_cell < 0) {
    complete = engine.run(on_model);
    stats = engine.stats;
    stats.millis = elapsed_ms(start);
    return complete;
  }

#ifdef _OPENMP
  const std::uint32_t dom = engine.root().dom[static_cast<std::size_t>(branch_cell)];
  std::vector<int> branches;
  for (int v = 0; v < cs.order; ++v)
    if (dom & (1u << v)) branches.push_back(v);

  std::atomic<bool> cancel{false};
  std::atomic<bool> all_complete{true};
  SearchStats total;
#pragma omp parallel for num_threads(threads) schedule(dynamic, 1)
  for (std::size_t b = 0; b < branches.size(); ++b) {
    if (cancel.load(std::memory_order_relaxed)) continue;
    Engine worker(engine);
    worker.stats = SearchStats{};
    worker.set_cancel_flag(&cancel);
    bool ok = worker.run_branch(branch_cell, branches[b], [&](const Algebra& a) {
      bool keep = true;
#pragma omp critical(magma_search_sink)
      {
        if (cancel.load(std::memory_order_relaxed)) {
          keep = false;
        } else {
          keep = on_model(a);
          if (!keep) cancel.store(true, std::memory_order_relaxed);
        }
      }
      return keep;
    });
    if (!ok) all_complete.store(false, std::memory_order_relaxed);
#pragma omp critical(magma_search_stats)
    {
      total.nodes += worker.stats.nodes;
      total.models += worker.stats.models;
    }
  }
  complete = all_complete.load();
  stats = total;
  stats.millis = elapsed_ms(start);
  return complete;
#else
  complete = engine.run(on_model);
  stats = engine.stats;
  stats.millis = elapsed_ms(start);
  return complete;
#endif
}

namespace {

// Accumulates models for one (sub)search; merged in branch order so the
// parallel path reproduces the serial output.
struct Collector {
  const SearchOptions* options;
  std::vector<Algebra> models;
  std::map<std::vector<int>, std::pair<std::vector<Algebra>, std::uint64_t>>
      orbits;  // canonical key -> (representative, labeled count)
  std::uint64_t labeled = 0;

  static std::vector<int> key_of(const Algebra& a) {
    std::vector<int> key;
    key.push_back(a.order());
    for (int t = 0; t < kOpCount; ++t) {
      Op op = static_cast<Op>(t);
      if (!a.has(op)) continue;
      key.push_back(t);
      const Table& table = a.table(op);
      key.insert(key.end(), table.begin(), table.end());
    }
    return key;
  }

  bool add(const Algebra& a) {
    ++labeled;
    if (options->up_to_iso) {
      Algebra canon = canonical_form(a);
      auto& slot = orbits[key_of(canon)];
      if (slot.first.empty()) slot.first.push_back(std::move(canon));
      ++slot.second;
      return options->mode != SearchMode::first;
    }
    if (options->mode == SearchMode::first) {
      models.push_back(a);
      return false;
    }
    if (options->mode == SearchMode::all) models.push_back(a);
    return true;
  }

  void merge(Collector&& other) {
    labeled += other.labeled;
    for (auto& m : other.models) models.push_back(std::move(m));
    for (auto& [key, slot] : other.orbits) {
      auto& mine = orbits[key];
      if (mine.first.empty()) mine.first = std::move(slot.first);
      mine.second += slot.second;
    }
  }

  void finalize(SearchOutcome& out) {
    if (options->up_to_iso) {
      out.count = orbits.size();
      for (auto& [key, slot] : orbits) {
        out.models.push_back(std::move(slot.first.front()));
        out.orbit_sizes.push_back(slot.second);
      }
      if (options->mode == SearchMode::count) {
        out.models.clear();
        out.orbit_sizes.clear();
      }
    } else {
      out.count = labeled;
      out.models = std::move(models);
    }
  }
};

}  // namespace

SearchOutcome search(const ConstraintSet& cs, const SearchOptions& options) {
  auto start = Clock::now();
  SearchOutcome out;
  Engine engine(cs, options);
  if (!engine.prepare()) {
    out.stats = engine.stats;
    out.stats.millis = elapsed_ms(start);
    return out;
  }

  int branch_cell = engine.first_undecided(engine.root());
  int threads = std::max(1, options.threads);
#ifndef _OPENMP
  threads = 1;
#endif

  if (threads <= 1 || branch_cell < 0) {
    Collector collector{&options, {}, {}, 0};
    out.complete =
        engine.run([&](const Algebra& a) { return collector.add(a); });
    collector.finalize(out);
    out.stats = engine.stats;
    out.stats.millis = elapsed_ms(start);
    return out;
  }

#ifdef _OPENMP
  const std::uint32_t dom =
      engine.root().dom[static_cast<std::size_t>(branch_cell)];
  std::vector<int> branches;
  for (int v = 0; v < cs.order; ++v)
    if (dom & (1u << v)) branches.push_back(v);

  std::vector<Collector> parts(branches.size());
  std::vector<SearchStats> part_stats(branches.size());
  std::vector<char> part_complete(branches.size(), 1);
  std::atomic<int> winner{static_cast<int>(branches.size())};
  const bool first_mode = options.mode == SearchMode::first;

#pragma omp parallel for num_threads(threads) schedule(dynamic, 1)
  for (std::size_t b = 0; b < branches.size(); ++b) {
    // In first mode a branch not yet started is pointless once a lower
    // branch has produced a model; branches below the winner still run to
    // completion, so the merged answer matches the serial one.
    if (first_mode && static_cast<int>(b) > winner.load()) continue;
    parts[b].options = &options;
    Engine worker(engine);
    worker.stats = SearchStats{};
    bool ok =
        worker.run_branch(branch_cell, branches[b], [&](const Algebra& a) {
          bool keep = parts[b].add(a);
          if (first_mode && !keep) {
            int expected = winner.load();
            while (static_cast<int>(b) < expected &&
                   !winner.compare_exchange_weak(expected,
                                                 static_cast<int>(b))) {
            }
          }
          return keep;
        });
    part_complete[b] = ok ? 1 : 0;
    part_stats[b] = worker.stats;
  }

  out.complete = true;
  Collector merged{&options, {}, {}, 0};
  const int win = winner.load();
  bool have_first = false;
  for (std::size_t b = 0; b < branches.size(); ++b) {
    out.stats.nodes += part_stats[b].nodes;
    out.stats.models += part_stats[b].models;
    if (first_mode) {
      if (static_cast<int>(b) > win) continue;
      if (!part_complete[b]) out.complete = false;
      if (!have_first && parts[b].labeled > 0) {
        merged.merge(std::move(parts[b]));
        have_first = true;
      }
      continue;
    }
    if (!part_complete[b]) out.complete = false;
    merged.merge(std::move(parts[b]));
  }
  merged.finalize(out);
  out.stats.millis = elapsed_ms(start);
  return out;
#else
  Collector collector{&options, {}, {}, 0};
  out.complete = engine.run([&](const Algebra& a) { return collector.add(a); });
  collector.finalize(out);
  out.stats = engine.stats;
  out.stats.millis = elapsed_ms(start);
  return out;
#endif
}

RefutationOutcome find_counterexample(
    const std::vector<Constraint>& hypotheses, const Constraint& conclusion,
    int max_order, const SearchOptions& options) {
  RefutationOutcome out;
  auto start = Clock::now();
  std::uint64_t spent = 0;
  for (int order = 1; order <= max_order; ++order) {
    ConstraintSet cs{order, hypotheses};
    SearchOptions o = options;
    o.mode = SearchMode::all;
    o.up_to_iso = false;
    if (options.node_budget) {
      if (spent >= options.node_budget) {
        out.complete = false;
        break;
      }
      o.node_budget = options.node_budget - spent;
    }
    SearchStats stats;
    std::optional<Algebra> found;
    std::optional<Witness> witness;
    bool complete = search_stream(
        cs, o,
        [&](const Algebra& model) {
          if (auto v = find_constraint_violation(model, conclusion)) {
            found = model;
            witness = std::move(v);
            return false;
          }
          return true;
        },
        stats);
    spent += stats.nodes;
    out.stats.nodes += stats.nodes;
    out.stats.models += stats.models;
    if (found) {
      out.model = std::move(found);
      out.witness = std::move(witness);
      out.order_found = order;
      out.complete = true;
      break;
    }
    if (!complete) {
      out.complete = false;
      break;
    }
  }
  out.stats.millis = elapsed_ms(start);
  return out;
}

std::optional<std::vector<std::vector<int>>> propagation_domains(
    const ConstraintSet& cs,
    const std::vector<std::tuple<Op, int, int, int>>& assignments) {
  SearchOptions options;
  Engine engine(cs, options);
  return engine.probe(assignments);
}

}  // namespace magma

#include "coa/search.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <limits>

namespace coa {

void EdgeQueue::push(QueueEntry e) {
  heap_.push_back(std::move(e));
  std::push_heap(heap_.begin(), heap_.end(),
                 [this](const QueueEntry& a, const QueueEntry& b) { return before(b, a); });
}

QueueEntry EdgeQueue::pop() {
  assert(!heap_.empty());
  std::pop_heap(heap_.begin(), heap_.end(),
                [this](const QueueEntry& a, const QueueEntry& b) { return before(b, a); });
  QueueEntry e = std::move(heap_.back());
  heap_.pop_back();
  return e;
}

bool EdgeQueue::before(const QueueEntry& a, const QueueEntry& b) const {
  const auto ord = key_compare(a.key, b.key, mode_);
  if (ord != std::strong_ordering::equal) return ord == std::strong_ordering::less;
  if (a.to != b.to) return a.to < b.to;
  if (a.from != b.from) return a.from < b.from;
  return a.label < b.label;
}

std::vector<VertexId> extract_path(const SearchTree& tree, VertexId v) {
  if (v < 0 || v >= static_cast<VertexId>(tree.parent.size()) || !tree.in_tree(v))
    throw GraphError("extract_path: vertex not in tree");
  std::vector<VertexId> path;
  const size_t limit = tree.parent.size() + 1;
  for (VertexId cur = v; cur != -1; cur = tree.parent[cur]) {
    path.push_back(cur);
    if (path.size() > limit) throw GraphError("extract_path: parent cycle");
  }
  std::reverse(path.begin(), path.end());
  return path;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/**
 * Lazy class-ordered search over per-vertex label frontiers.
 *
 * The worst-class path order is not strictly isotone: a strictly better class
 * vector at an intermediate vertex can become class-EQUAL to a rival after
 * both are extended by the same suffix, at which point the rival's shorter
 * length should win the final tie-break. A single (theta, g) label per vertex
 * therefore loses length optimality. Each vertex instead keeps every label
 * that is not dominated, where label A dominates label B iff
 * theta_A <= theta_B under the order mode AND g_A <= g_B. That relation is
 * preserved by appending any common suffix, so pruning dominated labels never
 * discards a candidate that could still produce a strictly better
 * (theta, length) result at the goal. Under a strictly isotone order
 * (reverse-lex, or the class-blind baseline) a theta-better label dominates
 * outright and the frontier degenerates to the classic single label.
 */
class SearchEngine {
public:
  SearchEngine(ColoredGraph& g, VertexId start, VertexId goal, OrderMode mode,
               std::set<ClassId> forbidden, long max_pops, bool use_h,
               bool class_blind)
      : g_(g),
        start_(start),
        goal_(goal),
        mode_(mode),
        forbidden_(std::move(forbidden)),
        max_pops_(max_pops),
        use_h_(use_h),
        class_blind_(class_blind),
        strict_order_(class_blind || mode.compare == ClassCompare::ReverseLex),
        num_classes_(g.num_edge_classes()),
        zero_(ClassVector::zero(g.num_edge_classes())),
        queue_(mode) {}

  bool check_invariants = false;
  bool trace_pops = false;
  std::function<void(const SearchSnapshot&)> inspect;

  PlanResult run() {
    const auto t0 = std::chrono::steady_clock::now();
    const long evals0 = g_.evaluation_count();
    PlanResult result;

    const int n = g_.vertex_count();
    if (start_ < 0 || start_ >= n || goal_ < 0 || goal_ >= n)
      throw GraphError("invalid start/goal vertex");
    frontier_.assign(static_cast<size_t>(n), {});

    labels_.push_back(Label{zero_, 0.0, start_, -1, true});
    frontier_[static_cast<size_t>(start_)].push_back(0);
    enqueue_outgoing(0);

    int result_label = -1;
    while (true) {
      if (inspect) {
        const SearchTree view = tree_view();
        inspect(SearchSnapshot{view, queue_.entries(), stats_.pops});
      }
      if (queue_.empty()) break;
      if (stats_.pops >= max_pops_) {
        result.status = PlanStatus::Aborted;
        break;
      }
      QueueEntry entry = queue_.pop();
      ++stats_.pops;
      if (!labels_[static_cast<size_t>(entry.label)].alive) continue;  // pruned since enqueue

      if (entry.from == goal_ && entry.to == goal_) {
        result_label = entry.label;
        break;
      }

      const bool first_eval = !g_.edge(entry.edge).evaluated;
      const auto [w, cls] = g_.evaluate_edge(entry.edge);
      if (trace_pops && first_eval) result.evaluated_k1.push_back(entry.key.k1);
      if (forbidden_.count(cls)) continue;

      const Label& src = labels_[static_cast<size_t>(entry.label)];
      ClassVector theta = src.theta + edge_theta(cls, w);
      const double cost = src.g + w;
      const int added = insert_label(entry.to, std::move(theta), cost, entry.label);
      if (added >= 0) enqueue_outgoing(added);
      if (check_invariants) verify_labels();
    }

    if (result_label < 0 && result.status != PlanStatus::Aborted) {
      // Defensive: the self edge of the best goal label is popped before the
      // queue can empty, so normally this is plain NoPath.
      result_label = best_goal_label();
      result.status = result_label >= 0 ? PlanStatus::Found : PlanStatus::NoPath;
    } else if (result_label >= 0) {
      result.status = PlanStatus::Found;
    }
    if (result_label >= 0) {
      result.path = label_path(result_label);
      result.signature = path_signature(result.path, g_, mode_);
    }

    result.tree_parent = tree_view().parent;
    result.stats = stats_;
    result.stats.evaluations = g_.evaluation_count() - evals0;
    result.stats.runtime_sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
  }

private:
  struct Label {
    ClassVector theta;
    double g = kInf;
    VertexId vertex = -1;
    int parent = -1;  // label id, -1 at the root
    bool alive = false;
  };

  ClassVector edge_theta(ClassId cls, double amount) const {
    if (class_blind_) return zero_;
    return ClassVector::unit(num_classes_, cls,
                             mode_.accum == Accumulation::Count ? 1.0 : amount);
  }

  bool dominates(const Label& l, const ClassVector& theta, double cost) const {
    const auto ord = cv_compare(l.theta, theta, mode_);
    if (ord == std::strong_ordering::greater) return false;
    if (strict_order_ && ord == std::strong_ordering::less) return true;
    return l.g <= cost + kKeyTolerance;
  }

  bool dominated_at(VertexId v, const ClassVector& theta, double cost) const {
    for (int id : frontier_[static_cast<size_t>(v)])
      if (dominates(labels_[static_cast<size_t>(id)], theta, cost)) return true;
    return false;
  }

  // Adds the label unless dominated; prunes labels it dominates. Returns the
  // new label id or -1.
  int insert_label(VertexId v, ClassVector theta, double cost, int parent) {
    if (dominated_at(v, theta, cost)) return -1;
    auto& ids = frontier_[static_cast<size_t>(v)];
    Label cand{std::move(theta), cost, v, parent, true};
    ids.erase(std::remove_if(ids.begin(), ids.end(),
                             [&](int id) {
                               Label& l = labels_[static_cast<size_t>(id)];
                               if (!dominates(cand, l.theta, l.g)) return false;
                               l.alive = false;
                               return true;
                             }),
              ids.end());
    const int id = static_cast<int>(labels_.size());
    labels_.push_back(std::move(cand));
    ids.push_back(id);
    return id;
  }

  // The lexicographically best (theta, then g) goal label, or -1.
  int best_goal_label() const {
    int best = -1;
    for (int id : frontier_[static_cast<size_t>(goal_)]) {
      if (best < 0) {
        best = id;
        continue;
      }
      const Label& a = labels_[static_cast<size_t>(id)];
      const Label& b = labels_[static_cast<size_t>(best)];
      const auto ord = cv_compare(a.theta, b.theta, mode_);
      if (ord == std::strong_ordering::less ||
          (ord == std::strong_ordering::equal && a.g < b.g))
        best = id;
    }
    return best;
  }

  void enqueue_outgoing(int label_id) {
    const Label& src = labels_[static_cast<size_t>(label_id)];
    const VertexId v = src.vertex;

    if (v == goal_) {
      // Trivial goal self edge t = (v_g, v_g): zero weight, no class
      // contribution to the reported path. Popping it terminates the search.
      // A label at the goal is never a useful prefix of another simple path
      // to the goal, so t is its only outgoing entry.
      QueueEntry t;
      t.from = t.to = goal_;
      t.label = label_id;
      t.key.k2 = src.theta;
      t.key.k1 = src.theta;
      t.key.k3 = t.key.k4 = src.g;
      queue_.push(std::move(t));
      ++stats_.enqueues;
      return;
    }

    const int goal_best = best_goal_label();
    for (const Arc& arc : g_.outgoing(v)) {
      const VertexId w = arc.to;
      if (w == v) continue;  // explicit self edges never improve anything
      const auto [est_w, est_cls] = g_.estimate_edge(arc.edge);
      if (forbidden_.count(est_cls)) continue;
      const EdgeRecord& rec = g_.edge(arc.edge);
      if (rec.evaluated && forbidden_.count(rec.class_true)) continue;

      QueueEntry entry;
      entry.from = v;
      entry.to = w;
      entry.edge = arc.edge;
      entry.label = label_id;
      entry.key.k2 = src.theta + edge_theta(est_cls, est_w);
      entry.key.k1 =
          entry.key.k2 + (class_blind_ ? zero_ : g_.heuristic_class_to_go(w, goal_));
      entry.key.k4 = src.g + est_w;
      entry.key.k3 = entry.key.k4 + (use_h_ ? g_.heuristic_cost_to_go(w, goal_) : 0.0);

      // Admissible keys lower-bound every completion through this edge, so an
      // entry whose keys cannot beat the incumbent goal label is pruned, and
      // one whose keys cannot improve the target frontier likewise.
      if (goal_best >= 0 &&
          dominates(labels_[static_cast<size_t>(goal_best)], entry.key.k1, entry.key.k3))
        continue;
      if (dominated_at(w, entry.key.k2, entry.key.k4)) continue;
      queue_.push(std::move(entry));
      ++stats_.enqueues;
    }
  }

  std::vector<VertexId> label_path(int label_id) const {
    std::vector<VertexId> path;
    for (int id = label_id; id >= 0; id = labels_[static_cast<size_t>(id)].parent) {
      path.push_back(labels_[static_cast<size_t>(id)].vertex);
      assert(labels_[static_cast<size_t>(id)].parent < id);
    }
    std::reverse(path.begin(), path.end());
    return path;
  }

  // Classic one-label-per-vertex view of the frontier (best label each), used
  // for snapshots and the reported parent pointers.
  SearchTree tree_view() const {
    SearchTree tree;
    const size_t n = frontier_.size();
    tree.parent.assign(n, -1);
    tree.g.assign(n, kInf);
    tree.theta.assign(n, ClassVector::top(num_classes_));
    for (size_t v = 0; v < n; ++v) {
      int best = -1;
      for (int id : frontier_[v]) {
        if (best < 0) {
          best = id;
          continue;
        }
        const Label& a = labels_[static_cast<size_t>(id)];
        const Label& b = labels_[static_cast<size_t>(best)];
        const auto ord = cv_compare(a.theta, b.theta, mode_);
        if (ord == std::strong_ordering::less ||
            (ord == std::strong_ordering::equal && a.g < b.g))
          best = id;
      }
      if (best < 0) continue;
      const Label& l = labels_[static_cast<size_t>(best)];
      tree.g[v] = l.g;
      tree.theta[v] = l.theta;
      tree.parent[v] =
          l.parent < 0 ? -1 : labels_[static_cast<size_t>(l.parent)].vertex;
    }
    return tree;
  }

  // Recomputes every alive label from its parent chain and checks it matches
  // the stored (theta, g); also checks frontiers are mutually non-dominated.
  // Quadratic; enabled only on request.
  void verify_labels() const {
    for (size_t v = 0; v < frontier_.size(); ++v) {
      const auto& ids = frontier_[v];
      for (size_t i = 0; i < ids.size(); ++i) {
        const Label& l = labels_[static_cast<size_t>(ids[i])];
        double cost = 0.0;
        ClassVector theta = zero_;
        const auto chain = label_path(ids[i]);
        for (size_t k = 0; k + 1 < chain.size(); ++k) {
          const EdgeRecord& rec = g_.edge(find_edge(g_, chain[k], chain[k + 1]));
          assert(rec.evaluated);
          cost += rec.weight_true;
          if (!class_blind_)
            theta += ClassVector::unit(num_classes_, rec.class_true,
                                       mode_.accum == Accumulation::Count
                                           ? 1.0
                                           : rec.weight_true);
        }
        if (std::abs(cost - l.g) > 1e-9 ||
            cv_compare(theta, l.theta, mode_) != std::strong_ordering::equal)
          throw GraphError("label inconsistent with its parent chain");
        for (size_t j = 0; j < ids.size(); ++j) {
          if (i == j) continue;
          const Label& other = labels_[static_cast<size_t>(ids[j])];
          if (cv_equal(other.theta, l.theta, mode_) &&
              std::abs(other.g - l.g) <= kKeyTolerance)
            continue;  // duplicates within tolerance are benign
          if (dominates(other, l.theta, l.g))
            throw GraphError("frontier holds a dominated label");
        }
      }
    }
  }

  ColoredGraph& g_;
  VertexId start_, goal_;
  OrderMode mode_;
  std::set<ClassId> forbidden_;
  long max_pops_;
  bool use_h_;
  bool class_blind_;
  bool strict_order_;
  int num_classes_;
  ClassVector zero_;
  std::vector<Label> labels_;               // append-only arena
  std::vector<std::vector<int>> frontier_;  // alive label ids per vertex
  EdgeQueue queue_;
  SearchStats stats_;
};

}  // namespace

PlanResult coa_star(ColoredGraph& g, VertexId start, VertexId goal,
                    const SearchOptions& opts) {
  SearchEngine engine(g, start, goal, opts.order_mode, opts.forbidden_classes,
                      opts.max_pops, opts.use_cost_heuristic, /*class_blind=*/false);
  engine.check_invariants = opts.check_invariants;
  engine.trace_pops = opts.trace_pops;
  engine.inspect = opts.inspect;
  return engine.run();
}

PlanResult astar(ColoredGraph& g, VertexId start, VertexId goal,
                 const AStarOptions& opts) {
  SearchEngine engine(g, start, goal, OrderMode{}, opts.blocked_classes,
                      opts.max_pops, opts.use_cost_heuristic, /*class_blind=*/true);
  engine.trace_pops = opts.trace_pops;
  return engine.run();
}

}  // namespace coa

#include "qhb/lattice.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "qhb/errors.hpp"

namespace qhb {

std::int64_t dot(const LatticeVector& u, const LatticeVector& v) {
  std::int64_t s = 0;
  const std::size_t n = std::min(u.size(), v.size());
  for (std::size_t i = 0; i < n; ++i) s += u[i] * v[i];
  return s;
}

std::int64_t pairing(const LatticeVector& u, const LatticeVector& v) { return -dot(u, v); }

namespace {

std::int64_t isqrt64(std::int64_t n) {
  if (n <= 0) return 0;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

struct Cancelled {};

struct SharedState {
  std::uint64_t max_nodes;
  std::atomic<std::uint64_t> nodes{0};
  // Lowest prefix index that produced a witness; workers on higher
  // prefixes give up.
  std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
};

// Depth-first search assigning one vector per vertex, one coordinate at a
// time.
//
// Symmetry breaking: a signed permutation of the ambient basis that fixes
// every vector placed so far maps embeddings to embeddings. Columns that are
// equal up to sign on the placed vectors are therefore interchangeable, and
// within such a class the sign-normalised values of the new vector may be
// taken non-increasing. Columns that are still zero can also be flipped
// individually, so their values are non-negative; this puts new basis
// vectors at the lowest unused indices.
class EmbeddingSearch {
 public:
  EmbeddingSearch(const GramMatrix& m, const SearchLimits& limits, SharedState& shared)
      : m_(m), n_(m.rank()), limits_(limits), shared_(shared) {}

  std::vector<LatticeVector>& placed() { return placed_; }

  // Stop at `depth` and record prefixes instead of searching further.
  void collect_prefixes(std::size_t depth, std::vector<std::vector<LatticeVector>>* out) {
    collect_depth_ = depth;
    prefixes_ = out;
  }

  void set_prefix_index(std::size_t index) { prefix_index_ = index; }

  bool place(std::size_t vertex) {
    if (prefixes_ && vertex == collect_depth_) {
      prefixes_->push_back(placed_);
      return false;
    }
    if (vertex == n_) return true;

    Frame f;
    f.vertex = vertex;
    f.targets.resize(vertex);
    for (std::size_t j = 0; j < vertex; ++j) f.targets[j] = -m_(vertex, j);
    f.suffix.assign(vertex, std::vector<std::int64_t>(n_ + 1, 0));
    for (std::size_t j = 0; j < vertex; ++j)
      for (std::size_t c = n_; c-- > 0;)
        f.suffix[j][c] = f.suffix[j][c + 1] + placed_[j][c] * placed_[j][c];
    classify_columns(f);
    f.partial.assign(vertex, 0);
    f.current.assign(n_, 0);
    return assign(f, 0, -m_(vertex, vertex));
  }

  void flush_nodes() {
    if (local_nodes_) {
      shared_.nodes.fetch_add(local_nodes_, std::memory_order_relaxed);
      local_nodes_ = 0;
    }
  }

 private:
  struct Frame {
    std::size_t vertex = 0;
    std::vector<std::int64_t> targets;              // required dot with each placed vector
    std::vector<std::vector<std::int64_t>> suffix;  // suffix squared norms of placed vectors
    std::vector<int> sign;                          // column sign relative to its class
    std::vector<std::ptrdiff_t> prev;               // previous column in the same class
    std::vector<bool> zero;                         // column still unused
    std::vector<std::int64_t> partial;
    LatticeVector current;
  };

  void classify_columns(Frame& f) const {
    f.sign.assign(n_, 1);
    f.prev.assign(n_, -1);
    f.zero.assign(n_, true);
    std::vector<std::ptrdiff_t> last_of_class;  // representative column -> last member
    std::vector<std::size_t> representative;
    for (std::size_t c = 0; c < n_; ++c) {
      int s = 0;
      for (std::size_t j = 0; j < f.vertex && s == 0; ++j) {
        if (placed_[j][c] > 0) s = 1;
        if (placed_[j][c] < 0) s = -1;
      }
      f.zero[c] = (s == 0);
      f.sign[c] = s == 0 ? 1 : s;
      for (std::size_t r = 0; r < representative.size(); ++r) {
        const std::size_t rep = representative[r];
        bool same = true;
        for (std::size_t j = 0; j < f.vertex && same; ++j)
          same = placed_[j][c] * f.sign[c] == placed_[j][rep] * f.sign[rep];
        if (same) {
          f.prev[c] = last_of_class[r];
          last_of_class[r] = static_cast<std::ptrdiff_t>(c);
          goto classified;
        }
      }
      representative.push_back(c);
      last_of_class.push_back(static_cast<std::ptrdiff_t>(c));
    classified:;
    }
  }

  void count_node() {
    if (++local_nodes_ >= 4096) {
      const auto total = shared_.nodes.fetch_add(local_nodes_, std::memory_order_relaxed) + local_nodes_;
      local_nodes_ = 0;
      if (total > shared_.max_nodes) {
        throw ResourceExceeded("embedding search exceeded " + std::to_string(shared_.max_nodes) + " nodes");
      }
      if (shared_.best.load(std::memory_order_relaxed) < prefix_index_) throw Cancelled{};
    }
  }

  bool assign(Frame& f, std::size_t column, std::int64_t rem) {
    count_node();
    const std::size_t vertex = f.vertex;
    if (column == n_) {
      if (rem != 0 || f.partial != f.targets) return false;
      placed_.push_back(f.current);
      if (place(vertex + 1)) return true;
      placed_.pop_back();
      return false;
    }
    for (std::size_t j = 0; j < vertex; ++j) {
      const std::int64_t diff = f.targets[j] - f.partial[j];
      // Cauchy-Schwarz on the columns still to be assigned.
      if (diff != 0 && diff * diff > rem * f.suffix[j][column]) return false;
    }

    std::int64_t hi = isqrt64(rem);
    if (limits_.coordinate_bound) hi = std::min(hi, *limits_.coordinate_bound);
    std::int64_t lo = -hi;
    const int sign = f.sign[column];
    if (f.zero[column]) lo = 0;
    if (f.prev[column] >= 0) {
      // sign * x <= sign_prev * x_prev
      const auto p = static_cast<std::size_t>(f.prev[column]);
      const std::int64_t cap = f.sign[p] * f.current[p];
      if (sign > 0) hi = std::min(hi, cap);
      else lo = std::max(lo, -cap);
    }
    for (std::int64_t x = hi; x >= lo; --x) {
      f.current[column] = x;
      if (x != 0)
        for (std::size_t j = 0; j < vertex; ++j) f.partial[j] += x * placed_[j][column];
      const bool found = assign(f, column + 1, rem - x * x);
      if (x != 0)
        for (std::size_t j = 0; j < vertex; ++j) f.partial[j] -= x * placed_[j][column];
      if (found) return true;
    }
    f.current[column] = 0;
    return false;
  }

  const GramMatrix& m_;
  std::size_t n_;
  const SearchLimits& limits_;
  SharedState& shared_;
  std::vector<LatticeVector> placed_;
  std::uint64_t local_nodes_ = 0;
  std::size_t collect_depth_ = 0;
  std::vector<std::vector<LatticeVector>>* prefixes_ = nullptr;
  std::size_t prefix_index_ = std::numeric_limits<std::size_t>::max();
};

void check_searchable(const GramMatrix& m) {
  for (std::size_t i = 0; i < m.rank(); ++i) {
    if (m(i, i) >= 0) {
      throw DomainError("diagonal entry " + std::to_string(m(i, i)) + " at " + std::to_string(i) +
                        " cannot embed into a negative diagonal lattice");
    }
    for (std::size_t j = 0; j < i; ++j)
      if (m(i, j) != m(j, i)) throw DomainError("Gram matrix is not symmetric");
  }
}

LatticeWitness make_witness(std::vector<LatticeVector> vectors, std::size_t n) {
  return LatticeWitness{n, std::move(vectors)};
}

std::optional<LatticeWitness> search_sequential(const GramMatrix& m, const SearchLimits& limits) {
  SharedState shared{limits.max_nodes};
  EmbeddingSearch search(m, limits, shared);
  const bool found = search.place(0);
  search.flush_nodes();
  if (shared.nodes.load() > limits.max_nodes) {
    // The budget was crossed after the last periodic check.
    if (!found) throw ResourceExceeded("embedding search exceeded " + std::to_string(limits.max_nodes) + " nodes");
  }
  if (!found) return std::nullopt;
  return make_witness(std::move(search.placed()), m.rank());
}

std::optional<LatticeWitness> search_parallel(const GramMatrix& m, const SearchLimits& limits) {
  SharedState shared{limits.max_nodes};
  const std::size_t depth = std::min<std::size_t>(2, m.rank());
  std::vector<std::vector<LatticeVector>> prefixes;
  {
    EmbeddingSearch collector(m, limits, shared);
    collector.collect_prefixes(depth, &prefixes);
    collector.place(0);
    collector.flush_nodes();
  }
  if (depth == m.rank()) {
    if (prefixes.empty()) return std::nullopt;
    return make_witness(std::move(prefixes.front()), m.rank());
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> exceeded{false};
  std::mutex mutex;
  std::optional<LatticeWitness> result;

  auto worker = [&] {
    for (;;) {
      const std::size_t index = next.fetch_add(1);
      if (index >= prefixes.size() || index > shared.best.load() || exceeded.load()) return;
      EmbeddingSearch search(m, limits, shared);
      search.set_prefix_index(index);
      search.placed() = prefixes[index];
      try {
        const bool found = search.place(depth);
        search.flush_nodes();
        if (found) {
          std::lock_guard lock(mutex);
          if (index < shared.best.load()) {
            shared.best.store(index);
            result = make_witness(std::move(search.placed()), m.rank());
          }
        }
      } catch (const Cancelled&) {
      } catch (const ResourceExceeded&) {
        exceeded.store(true);
        return;
      }
    }
  };

  const unsigned count = std::max(1u, limits.threads);
  std::vector<std::thread> pool;
  pool.reserve(count);
  for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  if (result) return result;
  if (exceeded.load()) throw ResourceExceeded("embedding search exceeded " + std::to_string(limits.max_nodes) + " nodes");
  return std::nullopt;
}

}  // namespace

std::optional<LatticeWitness> find_embedding(const GramMatrix& m, const SearchLimits& limits) {
  check_searchable(m);
  if (m.rank() == 0) return LatticeWitness{};
  if (limits.determinant_prefilter) {
    // A A^T = -Q forces |det Q| = det(A)^2.
    if (!is_perfect_square(abs(determinant(m)))) return std::nullopt;
  }
  if (limits.threads > 1) return search_parallel(m, limits);
  return search_sequential(m, limits);
}

bool verify_embedding(const LatticeWitness& w, const GramMatrix& m) {
  if (w.vectors.size() != m.rank()) {
    throw ShapeMismatch("witness has " + std::to_string(w.vectors.size()) + " vectors for a rank " +
                        std::to_string(m.rank()) + " lattice");
  }
  for (const auto& v : w.vectors) {
    if (v.size() != w.ambient_rank) {
      throw ShapeMismatch("witness vector of length " + std::to_string(v.size()) + " in ambient rank " +
                          std::to_string(w.ambient_rank));
    }
  }
  if (w.ambient_rank != m.rank()) return false;
  for (std::size_t i = 0; i < m.rank(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if (pairing(w.vectors[i], w.vectors[j]) != m(i, j)) return false;
  return true;
}

LatticeWitness standard_complementary_embedding(const WeightString& s2, const WeightString& s3) {
  if (!s2.is_canonical() || !s3.is_canonical() || s2.empty() || s3.empty() || dual(s2) != s3) {
    throw NotComplementary(s2.to_string() + " and " + s3.to_string() + " are not dual strings");
  }
  // Peel back to ((2), (2)). A trailing 2 on one leg pairs with a +1 on the
  // other leg's last entry.
  enum class Step { AppendToFirst, AppendToSecond };
  std::vector<Step> steps;
  std::vector<std::int64_t> a = s2.entries(), b = s3.entries();
  while (!(a.size() == 1 && b.size() == 1)) {
    if (a.size() > 1 && a.back() == 2) {
      steps.push_back(Step::AppendToFirst);
      a.pop_back();
      --b.back();
    } else {
      steps.push_back(Step::AppendToSecond);
      b.pop_back();
      --a.back();
    }
  }

  const std::size_t n = s2.size() + s3.size();
  std::vector<LatticeVector> first{LatticeVector(n, 0)};
  std::vector<LatticeVector> second{LatticeVector(n, 0)};
  first[0][0] = 1;
  first[0][1] = 1;
  second[0][0] = 1;
  second[0][1] = -1;
  // `tail` occurs only in the last vector of each leg: +1 in `first`, -1 in `second`.
  std::size_t tail = 1;
  std::size_t fresh = 2;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    const std::size_t g = fresh++;
    LatticeVector v(n, 0);
    if (*it == Step::AppendToSecond) {
      first.back()[g] += 1;
      v[tail] = 1;
      v[g] = -1;
      second.push_back(std::move(v));
    } else {
      second.back()[g] -= 1;
      v[tail] = -1;
      v[g] = 1;
      first.push_back(std::move(v));
    }
    tail = g;
  }

  LatticeWitness w{n, std::move(first)};
  w.vectors.insert(w.vectors.end(), second.begin(), second.end());
  return w;
}

StarEmbedding extend_with_complementary_legs(const WeightString& chain, const LatticeWitness& chain_witness,
                                             const WeightString& s2, const WeightString& s3) {
  if (chain.empty()) throw ShapeMismatch("cannot extend an empty chain");
  if (!verify_embedding(chain_witness, gram(chain))) {
    throw ShapeMismatch("witness does not embed the chain " + chain.to_string());
  }
  const LatticeWitness legs = standard_complementary_embedding(s2, s3);
  const std::size_t k = chain.size();
  const std::size_t n = k + legs.ambient_rank;

  auto widen = [&](const LatticeVector& v, std::size_t offset) {
    LatticeVector out(n, 0);
    std::copy(v.begin(), v.end(), out.begin() + static_cast<std::ptrdiff_t>(offset));
    return out;
  };

  StarEmbedding out;
  out.graph.a0 = chain.back() + 1;
  std::vector<WeightString::value_type> first_leg(chain.entries().rbegin() + 1, chain.entries().rend());
  out.graph.legs = {WeightString(std::move(first_leg)), s2, s3};

  out.witness.ambient_rank = n;
  LatticeVector centre = widen(chain_witness.vectors[k - 1], 0);
  centre[k] -= 1;
  out.witness.vectors.push_back(std::move(centre));
  for (std::size_t i = k - 1; i-- > 0;) out.witness.vectors.push_back(widen(chain_witness.vectors[i], 0));
  for (const auto& v : legs.vectors) out.witness.vectors.push_back(widen(v, k));
  return out;
}

LatticeVector project(const LatticeVector& v, const LatticeVector& e) {
  if (pairing(e, e) != -1) throw DomainError("projection needs a vector of square -1");
  if (v.size() != e.size()) throw ShapeMismatch("projection of vectors with different lengths");
  const std::int64_t c = pairing(v, e);
  LatticeVector out = v;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * e[i];
  return out;
}

}  // namespace qhb

#include "sisres/graph.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

#include "sisres/errors.hpp"

namespace sisres {

int DecoratedGraph::add_vertex(int self_int, bool is_L) {
  Vertex v;
  v.id = static_cast<int>(vertices.size());
  v.self_int = self_int;
  v.is_L = is_L;
  vertices.push_back(v);
  return v.id;
}

void DecoratedGraph::add_edge(int a, int b) { edges.push_back({std::min(a, b), std::max(a, b)}); }

int DecoratedGraph::valency(int v) const {
  int d = 0;
  for (auto [a, b] : edges) d += (a == v) + (b == v);
  return d + arrow_count(v);
}

int DecoratedGraph::arrow_count(int v) const {
  int d = 0;
  for (const auto& a : arrows) d += a.at == v;
  return d;
}

std::vector<std::vector<int>> DecoratedGraph::adjacency() const {
  std::vector<std::vector<int>> adj(vertices.size());
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

std::vector<std::vector<int>> DecoratedGraph::intersection_matrix() const {
  const std::size_t n = vertices.size();
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = vertices[i].self_int;
  for (auto [a, b] : edges) {
    if (a == b) continue;  // a nodal curve: no change to E.E here
    m[a][b] += 1;
    m[b][a] += 1;
  }
  return m;
}

void DecoratedGraph::normalize() {
  for (std::size_t i = 0; i < vertices.size(); ++i) vertices[i].id = static_cast<int>(i);
  for (auto& e : edges)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(edges.begin(), edges.end());
  std::sort(arrows.begin(), arrows.end(), [](const Arrow& p, const Arrow& q) {
    return std::make_tuple(p.at, p.mult.has_value(), p.mult.value_or(0)) <
           std::make_tuple(q.at, q.mult.has_value(), q.mult.value_or(0));
  });
}

bool operator==(const DecoratedGraph::Vertex& a, const DecoratedGraph::Vertex& b) {
  return a.id == b.id && a.self_int == b.self_int && a.is_L == b.is_L && a.rate == b.rate &&
         a.component == b.component && a.mult == b.mult;
}

bool operator==(const DecoratedGraph& a, const DecoratedGraph& b) {
  if (a.vertices != b.vertices || a.edges != b.edges || a.arrows.size() != b.arrows.size()) return false;
  for (std::size_t i = 0; i < a.arrows.size(); ++i)
    if (a.arrows[i].at != b.arrows[i].at || a.arrows[i].mult != b.arrows[i].mult) return false;
  return true;
}

namespace {

// Vertex invariants that do not depend on the labelling.
struct Label {
  int is_L;
  int self_int;
  int has_rate;
  Rat rate;
  std::vector<std::pair<std::string, int>> mult;
  std::vector<int> arrows;  // arrow mults, -1 for none
  int loops;

  bool operator<(const Label& o) const {
    return std::tie(is_L, self_int, has_rate, rate, mult, arrows, loops) <
           std::tie(o.is_L, o.self_int, o.has_rate, o.rate, o.mult, o.arrows, o.loops);
  }
  bool operator==(const Label& o) const { return !(*this < o) && !(o < *this); }
};

std::vector<Label> labels(const DecoratedGraph& g, const IsoOptions& opt) {
  std::vector<Label> out(g.vertices.size());
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    const auto& v = g.vertices[i];
    Label& l = out[i];
    l.is_L = v.is_L;
    l.self_int = v.self_int;
    l.has_rate = opt.rates && v.rate.has_value();
    l.rate = l.has_rate ? *v.rate : Rat(0);
    if (opt.mults) l.mult.assign(v.mult.begin(), v.mult.end());
    l.loops = 0;
  }
  for (const auto& a : g.arrows) {
    if (a.at < 0) continue;
    out[a.at].arrows.push_back(opt.arrow_mults && a.mult ? *a.mult : -1);
  }
  for (auto& l : out) std::sort(l.arrows.begin(), l.arrows.end());
  for (auto [a, b] : g.edges)
    if (a == b) out[a].loops += 1;
  return out;
}

// Dense ranks from sortable keys.
template <class K>
std::vector<int> ranks(const std::vector<K>& keys) {
  std::vector<K> u = keys;
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  std::vector<int> r(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i)
    r[i] = static_cast<int>(std::lower_bound(u.begin(), u.end(), keys[i]) - u.begin());
  return r;
}

int count_classes(const std::vector<int>& c) {
  std::vector<int> u = c;
  std::sort(u.begin(), u.end());
  return static_cast<int>(std::unique(u.begin(), u.end()) - u.begin());
}

// 1-dimensional Weisfeiler-Leman refinement; colours stay canonical ranks.
std::vector<int> refine(const std::vector<std::vector<int>>& adj, std::vector<int> col) {
  int classes = count_classes(col);
  while (true) {
    std::vector<std::pair<int, std::vector<int>>> keys(col.size());
    for (std::size_t v = 0; v < col.size(); ++v) {
      std::vector<int> nb;
      for (int u : adj[v]) nb.push_back(col[u]);
      std::sort(nb.begin(), nb.end());
      keys[v] = {col[v], std::move(nb)};
    }
    std::vector<int> next = ranks(keys);
    int c = count_classes(next);
    col = std::move(next);
    if (c == classes) return col;
    classes = c;
  }
}

std::vector<std::vector<int>> edge_counts(const DecoratedGraph& g) {
  const std::size_t n = g.vertices.size();
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
  for (auto [a, b] : g.edges) {
    m[a][b] += 1;
    if (a != b) m[b][a] += 1;
  }
  return m;
}

}  // namespace

std::optional<std::vector<int>> isomorphic(const DecoratedGraph& a, const DecoratedGraph& b, const IsoOptions& opt) {
  const int n = static_cast<int>(a.vertices.size());
  if (n != static_cast<int>(b.vertices.size()) || a.edges.size() != b.edges.size() ||
      a.arrows.size() != b.arrows.size())
    return std::nullopt;
  // arrows with no attachment (smooth germ) only need to agree in number
  auto loose = [](const DecoratedGraph& g) {
    return std::count_if(g.arrows.begin(), g.arrows.end(), [](const auto& x) { return x.at < 0; });
  };
  if (loose(a) != loose(b)) return std::nullopt;

  // refine the disjoint union so colours are comparable
  std::vector<Label> la = labels(a, opt), lb = labels(b, opt);
  std::vector<Label> all = la;
  all.insert(all.end(), lb.begin(), lb.end());
  std::vector<std::vector<int>> adj(2 * n);
  for (auto [p, q] : a.edges) {
    adj[p].push_back(q);
    adj[q].push_back(p);
  }
  for (auto [p, q] : b.edges) {
    adj[n + p].push_back(n + q);
    adj[n + q].push_back(n + p);
  }
  std::vector<int> col = refine(adj, ranks(all));
  {
    std::vector<int> ca(col.begin(), col.begin() + n), cb(col.begin() + n, col.end());
    std::sort(ca.begin(), ca.end());
    std::sort(cb.begin(), cb.end());
    if (ca != cb) return std::nullopt;
  }
  auto ma = edge_counts(a), mb = edge_counts(b);

  // rarest colours first
  std::vector<int> size(2 * n + 1, 0);
  for (int v = 0; v < n; ++v) size[col[v]] += 1;
  std::vector<int> order(n);
  for (int v = 0; v < n; ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(), [&](int p, int q) { return size[col[p]] < size[col[q]]; });
  // prefer vertices adjacent to already placed ones
  std::vector<int> placed_order;
  std::vector<bool> seen(n, false);
  for (int start : order) {
    if (seen[start]) continue;
    std::vector<int> queue{start};
    seen[start] = true;
    for (std::size_t k = 0; k < queue.size(); ++k) {
      int v = queue[k];
      placed_order.push_back(v);
      std::vector<int> nb;
      for (int u = 0; u < n; ++u)
        if (ma[v][u] > 0 && !seen[u]) nb.push_back(u);
      std::stable_sort(nb.begin(), nb.end(), [&](int p, int q) { return size[col[p]] < size[col[q]]; });
      for (int u : nb) {
        seen[u] = true;
        queue.push_back(u);
      }
    }
  }

  std::vector<int> f(n, -1);
  std::vector<bool> used(n, false);
  long budget = 2000000;
  std::function<bool(int)> rec = [&](int k) -> bool {
    if (k == n) return true;
    if (--budget < 0) return false;
    int v = placed_order[k];
    for (int w = 0; w < n; ++w) {
      if (used[w] || col[n + w] != col[v]) continue;
      bool ok = ma[v][v] == mb[w][w];
      for (int j = 0; j < k && ok; ++j) {
        int u = placed_order[j];
        ok = ma[v][u] == mb[w][f[u]];
      }
      if (!ok) continue;
      f[v] = w;
      used[w] = true;
      if (rec(k + 1)) return true;
      used[w] = false;
      f[v] = -1;
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  return f;
}

namespace {

struct Certificate {
  std::vector<Label> labels;
  std::vector<int> matrix;
  bool operator<(const Certificate& o) const {
    if (labels.size() != o.labels.size()) return labels.size() < o.labels.size();
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] < o.labels[i]) return true;
      if (o.labels[i] < labels[i]) return false;
    }
    return matrix < o.matrix;
  }
};

}  // namespace

std::vector<int> canonical_order(const DecoratedGraph& g) {
  const int n = static_cast<int>(g.vertices.size());
  if (n == 0) return {};
  IsoOptions opt;
  opt.mults = true;
  opt.arrow_mults = true;
  std::vector<Label> lab = labels(g, opt);
  auto adj = g.adjacency();
  auto m = edge_counts(g);

  std::optional<Certificate> best;
  std::vector<int> best_perm;
  long leaves = 0;
  const long max_leaves = 4000;

  std::function<void(std::vector<int>)> search = [&](std::vector<int> col) {
    if (leaves >= max_leaves) return;
    col = refine(adj, col);
    // first non-singleton cell, smallest colour
    std::vector<int> cnt(n, 0);
    for (int c : col) cnt[c] += 1;
    int target = -1;
    for (int c = 0; c < n; ++c)
      if (cnt[c] > 1) {
        target = c;
        break;
      }
    if (target < 0) {
      ++leaves;
      std::vector<int> perm(n);
      for (int v = 0; v < n; ++v) perm[col[v]] = v;
      Certificate cert;
      for (int i = 0; i < n; ++i) cert.labels.push_back(lab[perm[i]]);
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) cert.matrix.push_back(m[perm[i]][perm[j]]);
      if (!best || cert < *best) {
        best = std::move(cert);
        best_perm = perm;
      }
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (col[v] != target) continue;
      // individualise v: it stays in front of its cell
      std::vector<int> c2(n);
      for (int u = 0; u < n; ++u) c2[u] = 2 * col[u] + ((col[u] == target && u != v) ? 1 : 0);
      search(ranks(c2));
      if (leaves >= max_leaves) return;
    }
  };
  search(ranks(lab));
  return best_perm;
}

DecoratedGraph relabel(const DecoratedGraph& g, const std::vector<int>& new_to_old) {
  const int n = static_cast<int>(g.vertices.size());
  if (static_cast<int>(new_to_old.size()) != n) fail(ErrorKind::InvalidArgument, "permutation size mismatch");
  std::vector<int> old_to_new(n, -1);
  for (int i = 0; i < n; ++i) old_to_new[new_to_old[i]] = i;
  DecoratedGraph out;
  for (int i = 0; i < n; ++i) {
    out.vertices.push_back(g.vertices[new_to_old[i]]);
    out.vertices.back().id = i;
  }
  for (auto [a, b] : g.edges) out.add_edge(old_to_new[a], old_to_new[b]);
  for (auto a : g.arrows) {
    if (a.at >= 0) a.at = old_to_new[a.at];
    out.arrows.push_back(a);
  }
  out.normalize();
  return out;
}

DecoratedGraph canonical_form(const DecoratedGraph& g) { return relabel(g, canonical_order(g)); }

}  // namespace sisres

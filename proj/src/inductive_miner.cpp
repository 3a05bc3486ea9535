#include "upm/inductive_miner.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace upm {

namespace {

// One sub-problem of the recursion. starts/ends list the activities that can
// open/close an execution of this fragment; can_skip records that the whole
// fragment may be skipped (a directly-follows pair jumped over it).
struct Fragment {
  std::vector<std::string> acts;  // sorted
  std::set<std::pair<std::string, std::string>> edges;
  std::set<std::string> starts, ends;
  bool can_skip = false;
};

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

ProcessTree discover(const Fragment& frag);

ProcessTree xor_or_single(std::vector<ProcessTree> children) {
  if (children.size() == 1) return std::move(children.front());
  return ProcessTree::xor_(std::move(children));
}

Fragment restrict_to(const Fragment& frag, const std::set<std::string>& keep) {
  Fragment sub;
  for (const auto& a : frag.acts)
    if (keep.count(a)) sub.acts.push_back(a);
  for (const auto& e : frag.edges)
    if (keep.count(e.first) && keep.count(e.second)) sub.edges.insert(e);
  for (const auto& a : frag.starts)
    if (keep.count(a)) sub.starts.insert(a);
  for (const auto& a : frag.ends)
    if (keep.count(a)) sub.ends.insert(a);
  return sub;
}

std::vector<std::set<std::string>> weak_components(const std::vector<std::string>& acts,
                                                   const std::set<std::pair<std::string, std::string>>& edges) {
  std::map<std::string, int> index;
  for (size_t i = 0; i < acts.size(); ++i) index[acts[i]] = static_cast<int>(i);
  UnionFind uf(acts.size());
  for (const auto& [u, v] : edges) uf.unite(index[u], index[v]);
  std::map<int, std::set<std::string>> groups;
  for (size_t i = 0; i < acts.size(); ++i) groups[uf.find(static_cast<int>(i))].insert(acts[i]);
  std::vector<std::set<std::string>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

std::optional<ProcessTree> try_xor_cut(const Fragment& frag) {
  auto comps = weak_components(frag.acts, frag.edges);
  if (comps.size() < 2) return std::nullopt;
  std::vector<ProcessTree> children;
  for (const auto& comp : comps) children.push_back(discover(restrict_to(frag, comp)));
  return ProcessTree::xor_(std::move(children));
}

std::optional<ProcessTree> try_seq_cut(const Fragment& frag) {
  const size_t n = frag.acts.size();
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < n; ++i) index[frag.acts[i]] = i;

  // Reachability closure between activities.
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (const auto& [u, v] : frag.edges) reach[index[u]][index[v]] = true;
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      if (reach[i][k])
        for (size_t j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = true;

  // Merge strongly connected and mutually unreachable activities; the
  // remaining groups must form a total order or there is no sequence cut.
  UnionFind uf(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (reach[i][j] == reach[j][i]) uf.unite(static_cast<int>(i), static_cast<int>(j));

  std::map<int, std::set<std::string>> by_root;
  for (size_t i = 0; i < n; ++i)
    by_root[uf.find(static_cast<int>(i))].insert(frag.acts[i]);
  if (by_root.size() < 2) return std::nullopt;

  std::vector<std::set<std::string>> groups;
  for (auto& [root, members] : by_root) groups.push_back(std::move(members));

  const auto group_before = [&](const std::set<std::string>& a, const std::set<std::string>& b) {
    for (const auto& u : a)
      for (const auto& v : b)
        if (reach[index.at(u)][index.at(v)]) return true;
    return false;
  };
  // Order groups by how many others precede them, then verify the result is a
  // strict total order; anything else is not a sequence.
  std::vector<size_t> rank(groups.size(), 0);
  for (size_t i = 0; i < groups.size(); ++i)
    for (size_t j = 0; j < groups.size(); ++j)
      if (i != j && group_before(groups[j], groups[i])) ++rank[i];
  std::vector<size_t> order(groups.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return rank[a] < rank[b]; });
  {
    std::vector<std::set<std::string>> sorted;
    for (size_t i : order) sorted.push_back(std::move(groups[i]));
    groups = std::move(sorted);
  }
  for (size_t i = 0; i < groups.size(); ++i)
    for (size_t j = i + 1; j < groups.size(); ++j)
      if (!group_before(groups[i], groups[j]) || group_before(groups[j], groups[i]))
        return std::nullopt;

  // Positions 0 and k+1 stand for START and END when checking which pairs
  // jump over a group.
  const size_t k = groups.size();
  std::map<std::string, size_t> pos;
  for (size_t g = 0; g < k; ++g)
    for (const auto& a : groups[g]) pos[a] = g + 1;
  std::vector<std::pair<size_t, size_t>> spans;
  for (const auto& [u, v] : frag.edges) spans.emplace_back(pos[u], pos[v]);
  for (const auto& a : frag.starts) spans.emplace_back(0, pos[a]);
  for (const auto& a : frag.ends) spans.emplace_back(pos[a], k + 1);

  std::vector<ProcessTree> children;
  for (size_t g = 0; g < k; ++g) {
    Fragment sub = restrict_to(frag, groups[g]);
    sub.starts.clear();
    sub.ends.clear();
    for (const auto& a : groups[g]) {
      if (frag.starts.count(a)) sub.starts.insert(a);
      if (frag.ends.count(a)) sub.ends.insert(a);
    }
    for (const auto& [u, v] : frag.edges) {
      if (pos[u] < g + 1 && groups[g].count(v)) sub.starts.insert(v);
      if (groups[g].count(u) && pos[v] > g + 1) sub.ends.insert(u);
    }
    for (const auto& [pu, pv] : spans)
      if (pu < g + 1 && pv > g + 1) sub.can_skip = true;
    children.push_back(discover(sub));
  }
  return ProcessTree::seq(std::move(children));
}

std::optional<ProcessTree> try_and_cut(const Fragment& frag) {
  // Activities stay in one branch unless the directly-follows relation holds
  // in both directions between them (fully interleaved pairs may be split).
  std::set<std::pair<std::string, std::string>> partner;
  for (const auto& a : frag.acts)
    for (const auto& b : frag.acts) {
      if (a >= b) continue;
      const bool both = frag.edges.count({a, b}) && frag.edges.count({b, a});
      if (!both) partner.insert({a, b});
    }
  auto comps = weak_components(frag.acts, partner);
  if (comps.size() < 2) return std::nullopt;
  for (const auto& comp : comps) {
    bool has_start = false, has_end = false;
    for (const auto& a : comp) {
      has_start |= frag.starts.count(a) > 0;
      has_end |= frag.ends.count(a) > 0;
    }
    if (!has_start || !has_end) return std::nullopt;
  }
  std::vector<ProcessTree> children;
  for (const auto& comp : comps) children.push_back(discover(restrict_to(frag, comp)));
  return ProcessTree::and_(std::move(children));
}

std::optional<ProcessTree> try_loop_cut(const Fragment& frag) {
  std::set<std::string> body;
  for (const auto& a : frag.starts) body.insert(a);
  for (const auto& a : frag.ends) body.insert(a);
  if (body.empty()) return std::nullopt;

  // Grow the body until every remaining component is entered only from end
  // activities and exits only into start activities.
  std::vector<std::set<std::string>> redo;
  for (;;) {
    std::vector<std::string> rest;
    for (const auto& a : frag.acts)
      if (!body.count(a)) rest.push_back(a);
    redo = weak_components(rest, [&] {
      std::set<std::pair<std::string, std::string>> sub;
      for (const auto& e : frag.edges)
        if (!body.count(e.first) && !body.count(e.second)) sub.insert(e);
      return sub;
    }());
    bool changed = false;
    for (const auto& comp : redo) {
      bool ok = true;
      for (const auto& [u, v] : frag.edges) {
        if (body.count(u) && comp.count(v) && !frag.ends.count(u)) ok = false;
        if (comp.count(u) && body.count(v) && !frag.starts.count(v)) ok = false;
      }
      if (!ok) {
        body.insert(comp.begin(), comp.end());
        changed = true;
        break;
      }
    }
    if (!changed) break;
  }

  Fragment body_frag = restrict_to(frag, body);
  body_frag.starts = frag.starts;
  body_frag.ends = frag.ends;

  if (!redo.empty()) {
    std::vector<ProcessTree> redo_children;
    for (const auto& comp : redo) {
      Fragment sub = restrict_to(frag, comp);
      for (const auto& [u, v] : frag.edges) {
        if (body.count(u) && comp.count(v)) sub.starts.insert(v);
        if (comp.count(u) && body.count(v)) sub.ends.insert(u);
      }
      redo_children.push_back(discover(sub));
    }
    return ProcessTree::loop(discover(body_frag), xor_or_single(std::move(redo_children)));
  }

  // No redo activities, but a direct end-to-start pair still loops the body
  // with an empty redo.
  std::set<std::pair<std::string, std::string>> back_edges;
  for (const auto& [u, v] : frag.edges)
    if (frag.ends.count(u) && frag.starts.count(v)) back_edges.insert({u, v});
  if (back_edges.empty()) return std::nullopt;
  for (const auto& e : back_edges) body_frag.edges.erase(e);
  return ProcessTree::loop(discover(body_frag), ProcessTree::silent());
}

ProcessTree flower(const Fragment& frag) {
  std::vector<ProcessTree> leaves;
  for (const auto& a : frag.acts) leaves.push_back(ProcessTree::leaf(a));
  return ProcessTree::loop(xor_or_single(std::move(leaves)), ProcessTree::silent());
}

ProcessTree discover(const Fragment& frag) {
  if (frag.can_skip) {
    Fragment inner = frag;
    inner.can_skip = false;
    return ProcessTree::xor_({discover(inner), ProcessTree::silent()});
  }
  if (frag.acts.empty()) return ProcessTree::silent();
  if (frag.acts.size() == 1 && !frag.edges.count({frag.acts[0], frag.acts[0]}))
    return ProcessTree::leaf(frag.acts[0]);

  if (auto t = try_xor_cut(frag)) return *t;
  if (auto t = try_seq_cut(frag)) return *t;
  if (auto t = try_and_cut(frag)) return *t;
  if (auto t = try_loop_cut(frag)) return *t;
  return flower(frag);
}

}  // namespace

ProcessTree im_discover(const Dfg& dfg) {
  Fragment root;
  for (const auto& n : dfg.nodes)
    if (n != kStartNode && n != kEndNode) root.acts.push_back(n);
  std::sort(root.acts.begin(), root.acts.end());
  for (const auto& [pair, count] : dfg.edges) {
    const auto& [u, v] = pair;
    if (u == kStartNode && v == kEndNode)
      root.can_skip = true;
    else if (u == kStartNode)
      root.starts.insert(v);
    else if (v == kEndNode)
      root.ends.insert(u);
    else
      root.edges.insert({u, v});
  }
  return canonicalize(discover(root));
}

}  // namespace upm

#include "upm/process_tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace upm {

ProcessTree ProcessTree::seq(std::vector<ProcessTree> children) {
  return {Kind::Seq, "", std::move(children)};
}
ProcessTree ProcessTree::xor_(std::vector<ProcessTree> children) {
  return {Kind::Xor, "", std::move(children)};
}
ProcessTree ProcessTree::and_(std::vector<ProcessTree> children) {
  return {Kind::And, "", std::move(children)};
}
ProcessTree ProcessTree::loop(ProcessTree body, ProcessTree redo) {
  return {Kind::Loop, "", {std::move(body), std::move(redo)}};
}

std::string to_text(const ProcessTree& tree) {
  switch (tree.kind) {
    case ProcessTree::Kind::Leaf:
      return tree.activity;
    case ProcessTree::Kind::Silent:
      return "tau";
    default:
      break;
  }
  std::string op;
  switch (tree.kind) {
    case ProcessTree::Kind::Seq: op = "->"; break;
    case ProcessTree::Kind::Xor: op = "X"; break;
    case ProcessTree::Kind::And: op = "+"; break;
    case ProcessTree::Kind::Loop: op = "*"; break;
    default: break;
  }
  std::string out = op + "(";
  for (size_t i = 0; i < tree.children.size(); ++i) {
    if (i) out += ",";
    out += to_text(tree.children[i]);
  }
  return out + ")";
}

ProcessTree canonicalize(const ProcessTree& tree) {
  ProcessTree node = tree;
  for (auto& c : node.children) c = canonicalize(c);

  if (node.kind == ProcessTree::Kind::Seq || node.kind == ProcessTree::Kind::Xor ||
      node.kind == ProcessTree::Kind::And) {
    std::vector<ProcessTree> flat;
    for (auto& c : node.children) {
      if (c.kind == node.kind)
        flat.insert(flat.end(), c.children.begin(), c.children.end());
      else
        flat.push_back(std::move(c));
    }
    node.children = std::move(flat);

    if (node.kind == ProcessTree::Kind::Xor) {
      // At most one silent branch is meaningful.
      bool seen_silent = false;
      std::vector<ProcessTree> kept;
      for (auto& c : node.children) {
        if (c.kind == ProcessTree::Kind::Silent) {
          if (seen_silent) continue;
          seen_silent = true;
        }
        kept.push_back(std::move(c));
      }
      node.children = std::move(kept);
    }
    if (node.kind != ProcessTree::Kind::Seq) {
      std::stable_sort(node.children.begin(), node.children.end(),
                       [](const ProcessTree& a, const ProcessTree& b) {
                         const bool sa = a.kind == ProcessTree::Kind::Silent;
                         const bool sb = b.kind == ProcessTree::Kind::Silent;
                         if (sa != sb) return sb;  // silent sorts last
                         return to_text(a) < to_text(b);
                       });
    }
    if (node.children.size() == 1) return std::move(node.children.front());
  }
  return node;
}

namespace {

struct NetBuilder {
  PetriNet net;
  int next_place = 0;
  int next_transition = 0;

  std::string add_place() {
    std::string id = "p" + std::to_string(next_place++);
    net.places.push_back(id);
    return id;
  }

  std::string add_transition(std::optional<std::string> label) {
    std::string id = "t" + std::to_string(next_transition++);
    net.transitions.push_back({id, std::move(label)});
    return id;
  }

  void arc(const std::string& from, const std::string& to) { net.arcs.emplace_back(from, to); }

  void build(const ProcessTree& node, const std::string& entry, const std::string& exit) {
    switch (node.kind) {
      case ProcessTree::Kind::Leaf: {
        const std::string t = add_transition(node.activity);
        arc(entry, t);
        arc(t, exit);
        return;
      }
      case ProcessTree::Kind::Silent: {
        const std::string t = add_transition(std::nullopt);
        arc(entry, t);
        arc(t, exit);
        return;
      }
      case ProcessTree::Kind::Seq: {
        std::string at = entry;
        for (size_t i = 0; i < node.children.size(); ++i) {
          const std::string next = i + 1 == node.children.size() ? exit : add_place();
          build(node.children[i], at, next);
          at = next;
        }
        return;
      }
      case ProcessTree::Kind::Xor: {
        for (const auto& c : node.children) build(c, entry, exit);
        return;
      }
      case ProcessTree::Kind::And: {
        const std::string split = add_transition(std::nullopt);
        const std::string join = add_transition(std::nullopt);
        arc(entry, split);
        arc(join, exit);
        for (const auto& c : node.children) {
          const std::string in = add_place(), out = add_place();
          arc(split, in);
          arc(out, join);
          build(c, in, out);
        }
        return;
      }
      case ProcessTree::Kind::Loop: {
        if (node.children.size() != 2)
          throw std::invalid_argument("loop node requires exactly two children");
        // Dedicated inner places so the back edge cannot leak tokens into
        // whatever surrounds the loop.
        const std::string in = add_place(), out = add_place();
        const std::string t_in = add_transition(std::nullopt);
        const std::string t_out = add_transition(std::nullopt);
        arc(entry, t_in);
        arc(t_in, in);
        arc(out, t_out);
        arc(t_out, exit);
        build(node.children[0], in, out);   // body
        build(node.children[1], out, in);   // redo
        return;
      }
    }
  }
};

}  // namespace

PetriNet tree_to_net(const ProcessTree& tree) {
  NetBuilder b;
  const std::string entry = b.add_place();
  const std::string exit = b.add_place();
  b.build(tree, entry, exit);
  b.net.initial_marking[entry] = 1;
  b.net.final_marking[exit] = 1;
  return std::move(b.net);
}

}  // namespace upm

#pragma once

#include <string>
#include <vector>

#include "upm/petri_net.hpp"

namespace upm {

// Block-structured process model. Operator nodes have at least two children
// (Loop exactly two: body, redo). Xor and And children are kept in canonical
// order; Seq and Loop order is semantic.
struct ProcessTree {
  enum class Kind { Leaf, Silent, Seq, Xor, And, Loop };

  Kind kind = Kind::Silent;
  std::string activity;  // Leaf only
  std::vector<ProcessTree> children;

  static ProcessTree leaf(std::string activity) { return {Kind::Leaf, std::move(activity), {}}; }
  static ProcessTree silent() { return {Kind::Silent, "", {}}; }
  static ProcessTree seq(std::vector<ProcessTree> children);
  static ProcessTree xor_(std::vector<ProcessTree> children);
  static ProcessTree and_(std::vector<ProcessTree> children);
  static ProcessTree loop(ProcessTree body, ProcessTree redo);

  friend bool operator==(const ProcessTree&, const ProcessTree&) = default;
};

// Textual form: "->" Seq, "X" Xor, "+" And, "*" Loop, "tau" Silent,
// e.g. ->(a,X(b,c),+(e,f),g,X(h,i,tau)).
std::string to_text(const ProcessTree& tree);

// Flatten nested same-operator children, collapse single-child operators,
// sort Xor/And children (silent last), drop duplicate silent Xor branches.
ProcessTree canonicalize(const ProcessTree& tree);

// Compositional translation to a net with one initial and one final marking.
// And and Loop introduce silent routing transitions; Seq and Xor do not.
PetriNet tree_to_net(const ProcessTree& tree);

}  // namespace upm

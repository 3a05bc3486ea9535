#pragma once

#include "upm/process_tree.hpp"
#include "upm/udfg.hpp"

namespace upm {

// Recursive cut detection over a directly-follows graph with START/END nodes,
// in the order: base cases, exclusive choice, sequence, parallel, loop, and
// the flower model as fallthrough. Always yields a tree.
ProcessTree im_discover(const Dfg& dfg);

}  // namespace upm

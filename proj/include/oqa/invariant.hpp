#pragma once

#include <map>
#include <vector>

#include "oqa/diagram.hpp"
#include "oqa/oqa.hpp"

namespace oqa {

// One crossing line: the tensorand `side` of the rho^{+-1} copy at `crossing`,
// twisted by t_d^{u_d} o t_u^{u_u}.
struct Factor {
  int crossing;
  int side;
  int u_d, u_u;
  friend bool operator==(const Factor&, const Factor&) = default;
};

struct FormalWord {
  std::vector<std::vector<Factor>> components;  // same order as traverse()
  std::vector<int> whitney;
  std::vector<bool> closed;
};

FormalWord formal_word(const MorseDiagram& d, const std::map<int, Segment>& basepoints = {});

struct EvalOptions {
  std::map<int, Segment> basepoints;
  int threads = 0;  // 0: hardware concurrency, capped by OQA_THREADS
  std::vector<Scalar> trace;  // evaluate_tangle only: for closed components
};

// w(T) for an open diagram. Closed components of an open diagram need a twist
// and opt.trace; each contributes tr(G^d w).
AlgebraElement evaluate_tangle(const Structure& s, const MorseDiagram& d, const EvalOptions& opt = {});
// Product over components of tr(G^d w); throws std::invalid_argument when the
// structure has no twist or the trace fails its preconditions.
Scalar evaluate_link(const Structure& s, const MorseDiagram& d, const std::vector<Scalar>& trace,
                     const EvalOptions& opt = {});
Scalar evaluate_knot(const Structure& s, const MorseDiagram& d, const std::vector<Scalar>& trace,
                     const EvalOptions& opt = {});

int eval_threads(int requested);

}  // namespace oqa

#pragma once

#include "bellcomm/exact.hpp"
#include "bellcomm/scenario.hpp"
#include "bellcomm/simplex.hpp"

namespace bellcomm {

/// Linear program over the no-signaling polytope: one variable per point of
/// the probability space; per-(x,y) normalization rows plus marginal
/// consistency rows referenced against y=0 (Alice side) and x=0 (Bob side).
StandardFormLP build_ns_lp(const BellFunctional& b);

/// Exact maximum of the functional over no-signaling behaviors.
Rational ns_bound(const BellFunctional& b);

/// Per-block maximum relaxation: sum over (x,y) of max_(a,b) V(a,b|x,y).
Int trivial_upper_bound(const BellFunctional& b);

}  // namespace bellcomm

#ifndef WITTLAB_WITTLAB_HPP
#define WITTLAB_WITTLAB_HPP

// Exact arithmetic for truncated p-typical Witt vectors over the truncated
// perfection of F_p[t]: Teichmueller lifts and expansions, the lifted Gauss
// norm, quotient seminorms via stable presentations, fibre-point geometry
// (homotopy, radius, domination, metric, classification), Newton polygons
// and factorization into primitive degree-1 elements, plus the polynomial
// disc analogue.

#include "config.hpp"
#include "errors.hpp"
#include "lognorm.hpp"
#include "newton.hpp"
#include "parse.hpp"
#include "perf_elem.hpp"
#include "polydisc.hpp"
#include "pwl_curve.hpp"
#include "rational.hpp"
#include "sampling.hpp"
#include "seminorm.hpp"
#include "witt_coord.hpp"
#include "witt_elem.hpp"

#endif

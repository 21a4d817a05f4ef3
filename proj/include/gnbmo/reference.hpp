#pragma once

#include "gnbmo/field.hpp"
#include "gnbmo/quadrature.hpp"
#include "gnbmo/seminorms.hpp"

// Deliberately naive serial implementations. They exist to cross-check the
// banded / prefix-tree / parallel paths in tests and benchmarks, so they stay
// as close to the defining formulas as possible.
namespace gnbmo::reference {

// ordered-pair loop with plain same-node exclusion
double pair_sum_direct(const NodeSet& nodes, const PairKernel& kernel);

// per centre and radius: collect member nodes, double loop for the average
double bmo_direct(const ScalarField& f, const ConvexDomain& dom, double h);

double sharp_direct(const ScalarField& f, const ConvexDomain& dom,
                    const NodeSet& nodes, Point x, double h);

// direct double loop over region pairs
double oscillation_direct(const ScalarField& f, const Region& A, const Region& B);

}  // namespace gnbmo::reference

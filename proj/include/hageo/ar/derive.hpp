#pragma once
#include "hageo/ar/reduce.hpp"

namespace hageo::ar {

struct Finding {
    graph::Pred pred;
    graph::Args args;
    std::vector<graph::FactId> cites;   // input facts whose rows span the equality
};

// all implied pairwise equalities not already stored in g, via the symmetric
// x_i + x_j bucket enumeration, plus constant-valued findings (angle
// differences of 0 or pi/2, zero log-ratio differences)
std::vector<Finding> derive_equalities(const ReducedBasis& basis, const LinearSystem& sys,
                                       const graph::DeductionGraph& g);

Rat frac_part(const Rat& r);

} // namespace hageo::ar

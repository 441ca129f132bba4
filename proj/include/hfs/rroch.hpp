#pragma once

// Riemann-Roch spaces L(D) = { lambda in K : dv(lambda) >= -D } + {0} for
// arbitrary divisors on the hyperelliptic model, with explicit F_q-bases.

#include <vector>

#include "hfs/curve.hpp"

namespace hfs {

struct RRBasis {
    Divisor divisor;
    unsigned dim = 0;
    std::vector<FuncElem> basis; // canonicalized (reduced row echelon form)
};

RRBasis rr_space(const CurvePtr& C, const Divisor& D);

// For a degree-0 divisor with trivial class: the generator lambda of the
// one-dimensional space L(D), so dv(lambda) = -D exactly.  Throws InputError
// when the class is nontrivial (dim L(D) = 0).
FuncElem rr_generator_of_principal(const CurvePtr& C, const Divisor& D);

} // namespace hfs

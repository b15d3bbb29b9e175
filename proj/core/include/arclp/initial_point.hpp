#pragma once

#include "arclp/iterate.hpp"

namespace arclp {

/// x = s = 100 e, lambda = 0. Perfectly centered, so it lies in N(theta) for every theta.
Iterate initial_point_alg1(const StandardLP& lp);

/// Least-squares starting point shifted into the positive orthant. Either of
/// x and s falls back to 100 e when a component ends up at or below 1e-10 or
/// non-finite. Throws NumericalError if A A^T cannot be factored.
Iterate initial_point_mehrotra(const StandardLP& lp, const NewtonKernel& kernel);
Iterate initial_point_mehrotra(const StandardLP& lp);

}  // namespace arclp

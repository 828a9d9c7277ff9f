#pragma once

// Small hand-built PABM instances shared by the unit tests and the acceptance run.

#include "pabm/generate.hpp"
#include "pabm/graph.hpp"

namespace pabm::fixtures {

/// Two communities of four; row i of Lambda is (lambda_i1, lambda_i2).
inline LabelVector two_by_four() { return LabelVector({0, 0, 0, 0, 1, 1, 1, 1}, 2); }

/// Gram matrix of the Theta eigenvector rows is half a block diagonal of 2x2 ones.
inline PopularityMatrix orthogonal_within_lambda() {
    PopularityMatrix p;
    p.lambda.resize(8, 2);
    p.lambda.col(0) << 2, 2, 2, 2, 1, 1, 2, 2;
    p.lambda.col(1) << 2, 2, 1, 1, 4, 4, 4, 4;
    p.lambda /= 4.0;
    return p;
}

/// Raw cosine rows put node 8 closer to the wrong community center.
inline PopularityMatrix misleading_center_lambda() {
    PopularityMatrix p;
    p.lambda.resize(8, 2);
    p.lambda.col(0) << 1, 10, 10, 8, 1, 8, 6, 10;
    p.lambda.col(1) << 2, 8, 8, 10, 2, 10, 8, 8;
    p.lambda /= 10.0;
    return p;
}

/// Published squared distances of each tau_i to the two community means.
inline constexpr double kDistToCenter1[8] = {1.76, 1.28, 1.28, 0.93, 3.43, 3.37, 3.51, 1.99};
inline constexpr double kDistToCenter2[8] = {3.43, 3.45, 3.45, 3.23, 0.65, 0.22, 0.31, 2.81};

}  // namespace pabm::fixtures

// types.hpp — small value types shared across modules.
#pragma once

namespace qwmaze {

// Amplitudes on the two directed success states of a junction.
// e_plus pairs with the lower-star edge |A_j, B_j1> (sign-flipped),
// e_minus with the upper-star edge |A_{j+1}, B_j1>; a terminal junction
// has a single edge and the missing slot stays zero.
struct AmplitudePair {
    double e_plus = 0.0;
    double e_minus = 0.0;

    double probability() const { return e_plus * e_plus + e_minus * e_minus; }
};

}  // namespace qwmaze

#pragma once

#include "bimot/halfint.hpp"

namespace bimot {

// Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M> in the Condon-Shortley
// convention. Selection-rule violations (M != m1+m2, triangle rule) return 0;
// invalid quantum numbers (|m| > j, wrong parity, j < 0) throw
// std::domain_error. Evaluated by Racah's sum in exact integer/rational
// arithmetic; supports j1+j2+J up to 31/2*2 (sum of twice-values <= 62).
double clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2,
                      HalfInt J, HalfInt M);

// Exact |<j1 m1; j2 m2 | J M>|^2, same domain rules as clebsch_gordan.
double clebsch_gordan_squared(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2,
                              HalfInt J, HalfInt M);

// Normalized line strength f = |<J'' M'', 1 q | J' M'>|^2 of the electric
// dipole transition from lower sublevel (j_low, m_low) to upper (j_up, m_up),
// with q = m_up - m_low in {-1, 0, +1}. Returns 0 when m_up != m_low + q.
// For a fixed upper sublevel, the sum over (m_low, q) is exactly 1.
double line_strength(HalfInt j_low, HalfInt m_low, int q,
                     HalfInt j_up, HalfInt m_up);

}  // namespace bimot

#pragma once

#include "tlb/series.hpp"
#include "tlb/states.hpp"

namespace tlb {

// f(z) = 1 + z f(z)^2          (unblobbed arc collections; Catalan numbers)
// e(z) = 1 + 2 z f(z) e(z)     (exterior arcs may carry one blob; central binomials)
// ftilde = 1 + z ftilde + z^2 ftilde^2   (dilute arc collections; Motzkin numbers)
// Each series is computed by functional-equation iteration; the *_closed
// variants give the independent combinatorial route.
Series series_f(int order);
Series series_f_closed(int order);
Series series_e(int order);
Series series_e_closed(int order);
Series series_f_dilute(int order);
Series series_f_dilute_closed(int order);

// The state-counting families: one for the no-boundary model, three for one
// boundary, six for two boundaries.
enum class EFamily { Z0, O1, O2, O3, T1, T2, T3, T4, T5, T6 };

// Generating function E^{(k)}(z) of the family. For T1/T2/T3 the k = 0 member
// depends on whether doubly blobbed arcs are admitted.
Series e_family_series(EFamily fam, int k, bool nb_nonzero, int order);

// Coefficient of z^j in the k-member of the family.
Int e_coefficient(EFamily fam, int j, int k, bool nb_nonzero);

// Family selector: `sector` carries the blob statuses of the outermost
// strings, the mode's lambda flags pick the column.
EFamily e_family_for(const BoundaryMode& mode, const SectorLabel& sector);

} // namespace tlb

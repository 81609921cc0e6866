#pragma once

#include <vector>

#include "polvar/dense.hpp"

namespace polvar {

/// All complex roots of p(z) = sum_k coeffs[k] z^k by Aberth-Ehrlich
/// simultaneous iteration. coeffs is in ascending degree order with nonzero
/// leading and trailing coefficients (deflate zeros at the origin and degree
/// deficiencies before calling). Initial guesses sit on a circle of radius
/// |c0/c_deg|^(1/deg), perturbed by fixed irrational angles so no guess hits
/// a symmetry axis. Simple roots converge to machine precision; a multiple
/// root of multiplicity k comes back as a cluster of radius about
/// (1e-13)^(1/k) around the true location.
std::vector<cplx> aberth_roots(const std::vector<cplx>& coeffs);

/// Collapses root clusters produced by multiple roots onto their centroids.
/// A merge is accepted only if the polynomial rebuilt from the collapsed
/// multiset still matches `coeffs` coefficient-wise to ~1e-9 relative, which
/// recovers exact multiple roots to near machine precision while genuinely
/// distinct close roots are left alone.
std::vector<cplx> coalesce_root_clusters(std::vector<cplx> roots,
                                         const std::vector<cplx>& coeffs);

} // namespace polvar

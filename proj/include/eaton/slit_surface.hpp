// Copyright 2026 The eatonflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <utility>

#include "eaton/cf_engine.hpp"
#include "eaton/numeric.hpp"
#include "eaton/torus_homology.hpp"

namespace eaton {

enum class CylinderFamily { horizontal, vertical };

const char* to_string(CylinderFamily f);

/// Cylinder on M(z): holonomy v of the core curve, area A and the pair k of
/// intersection numbers with the two covering classes. k keeps its sign.
struct CylinderData {
  Integer vx, vy;
  Rational area;
  int k1 = 0, k2 = 0;
  CylinderFamily family = CylinderFamily::horizontal;
};

/// Total area of M(z): two unit tori.
inline const Rational kSurfaceArea{2};

/// Horizontal and vertical cylinders of M(z). Input error when |x| or |y| is
/// 1/2 (one of the areas would vanish).
std::pair<CylinderData, CylinderData> base_cylinders(const Rational& x,
                                                     const Rational& y);
std::pair<CylinderData, CylinderData> base_cylinders(const TorusPoint& z);

/// Image of c under g; requires the induced action to be trivial, otherwise
/// the k-pair is not preserved and a contract error is raised.
CylinderData image_cylinder(const IntegerMatrix2& g, bool action_trivial,
                            const CylinderData& c);

struct StripQuality {
  Interval lhs;  // |(cos t, sin t) ^ v|
  Interval rhs;  // (1 - eps) A / (2 |v|)
  Rational epsilon;
  Tri passes = Tri::undecided;
};

/// Strip inequality for the direction (1, theta). The decision is taken on
/// the squared sides, which are exact rational intervals; lhs and rhs are
/// reported at `precision` bits.
StripQuality strip_quality(const RationalInterval& theta, const CylinderData& c,
                           const Rational& epsilon,
                           mpfr_prec_t precision = Interval::kDefaultPrecision);

struct SigmaMatrix {
  // Row-major entries of diag(q, 1/q) * ((t, -1), (0, 1/t)) * word_matrix.
  std::array<RationalInterval, 4> entries;
  Tri bounded = Tri::undecided;
};

/// sigma_n at the even index k_n. bounded is yes iff every entry is
/// certified inside [-1, 1].
SigmaMatrix sigma_n(const ContinuedFraction& cf, std::size_t k_n,
                    const RationalInterval& theta);

/// 0 < p_{k-1}/q_k < p_k/q_k < theta, certified.
Tri convergent_ordering(const ContinuedFraction& cf, std::size_t k,
                        const RationalInterval& theta);

/// |(q_{k-1}, p_{k-1})| / (q_{k-1} |(1, theta)|) < 2, certified.
Tri vertical_ratio_bound(const ContinuedFraction& cf, std::size_t k,
                         const RationalInterval& theta);

/// The covering classes are differences of parallel loops in the two
/// squares, so their holonomy vanishes. Returns whether it does.
bool no_drift_check(const TorusPoint& z);

}  // namespace eaton

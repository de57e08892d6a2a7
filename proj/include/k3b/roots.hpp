#pragma once

#include <vector>

#include "k3b/interval.hpp"
#include "k3b/poly.hpp"

namespace k3b {

/// Largest degree accepted by the factorization routines.
inline constexpr int kMaxFactorDegree = 32;

/// Certified isolating boxes for all complex roots of a squarefree p:
/// pairwise disjoint, each containing exactly one root. Throws
/// InvalidArgument for non-squarefree input.
std::vector<Box> isolate_roots(const QPoly& p);

/// Shrinks a certified isolating box of a simple root of p until its width
/// is at most 2^-prec.
Box refine_root(const QPoly& p, Box box, unsigned prec);

/// Monic irreducible factors of a squarefree p over Q, sorted by degree and
/// then coefficients.
std::vector<QPoly> factor_squarefree(const QPoly& p);

struct PolyFactor {
  QPoly poly;
  unsigned multiplicity;
};
std::vector<PolyFactor> factor(const QPoly& p);

bool is_irreducible(const QPoly& p);

/// All complex roots real (Sturm count equals degree); p squarefree.
bool is_totally_real(const QPoly& p);

}  // namespace k3b

#pragma once

#include <cstdint>

#include "braidstat/braid.hpp"
#include "braidstat/laurent.hpp"

namespace braidstat {

enum class BurauKind { Unreduced, Reduced };

/// n x n Burau matrix of sigma_i (or its inverse): identity except for the
/// block [[1 - t, t], [1, 0]] on rows/columns i, i+1 (1-based).
LaurentMatrix burau_generator(int n, int i, bool inverse = false);

/// (n-1) x (n-1) reduced Burau matrix of sigma_i (or its inverse); the 1x1
/// matrix (-t) when n = 2.
LaurentMatrix reduced_burau_generator(int n, int i, bool inverse = false);

/// Product of generator matrices over the letters of b, left to right.
LaurentMatrix burau_image(const BraidWord& b, BurauKind kind);

/// Alexander polynomial of the closure of b,
///   (1 - t) det(I - reduced_burau(b)) / (1 - t^n),
/// in unit-canonical form. Zero when the determinant vanishes.
LaurentPoly alexander_closed_braid(const BraidWord& b);

/// Alexander polynomial of the closed 2-braid sigma_1^r:
/// (1 - (-1)^r t^r) / (1 + t); zero for r = 0.
LaurentPoly torus_f(std::int64_t r);

/// Product of torus_f(k_i) over the tuple, in canonical form.
LaurentPoly alexander_family_product(const FamilyTuple& t);

}  // namespace braidstat

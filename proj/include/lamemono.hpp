// lamemono: algebraic-solution analysis for the Lame equation
//
//   u'' + (P'/2P) u' - (l(l+1)x + B)/(4P) u = 0,   P = x^3 - (g2/4)x - (g3/4)
//
// Exact pullback verification from hypergeometric operators, classification
// of the parameter sets admitting a basis of algebraic solutions, numerical
// monodromy with finite-group recognition, and pointwise evaluation of the
// algebraic solution bases themselves.
//
// Copyright (c) 2026 the lamemono authors
// SPDX-License-Identifier: MIT
//
// Permission is hereby granted, free of charge, to any person obtaining a
// copy of this software and associated documentation files (the "Software"),
// to deal in the Software without restriction, subject to the conditions in
// the LICENSE file at the repository root.

#pragma once

#define LAMEMONO_VERSION_MAJOR 0
#define LAMEMONO_VERSION_MINOR 1
#define LAMEMONO_VERSION_PATCH 0

#include "lamemono/rational.hpp"
#include "lamemono/polynomial.hpp"
#include "lamemono/number_field.hpp"
#include "lamemono/rational_function.hpp"
#include "lamemono/parse.hpp"
#include "lamemono/roots.hpp"
#include "lamemono/operators.hpp"
#include "lamemono/schwarz.hpp"
#include "lamemono/pullback.hpp"
#include "lamemono/lame.hpp"
#include "lamemono/monodromy.hpp"
#include "lamemono/solutions.hpp"

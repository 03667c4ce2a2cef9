#pragma once

#include "lieshear/document.hpp"
#include "lieshear/error.hpp"
#include "lieshear/exterior.hpp"
#include "lieshear/geometry.hpp"
#include "lieshear/lie_algebra.hpp"
#include "lieshear/linalg.hpp"
#include "lieshear/notation.hpp"
#include "lieshear/polynomial.hpp"
#include "lieshear/rational.hpp"
#include "lieshear/search.hpp"
#include "lieshear/shear.hpp"

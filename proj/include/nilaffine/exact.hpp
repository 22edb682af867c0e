#pragma once

#include "nilaffine/exact/engel.hpp"
#include "nilaffine/exact/linear.hpp"
#include "nilaffine/exact/matrix.hpp"
#include "nilaffine/exact/rational.hpp"
#include "nilaffine/exact/scalar.hpp"

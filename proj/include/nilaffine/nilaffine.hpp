#pragma once

#include "nilaffine/affine/rep.hpp"
#include "nilaffine/exact.hpp"
#include "nilaffine/liealg/catalog.hpp"
#include "nilaffine/liealg/derivations.hpp"
#include "nilaffine/liealg/lie_algebra.hpp"
#include "nilaffine/liealg/semidirect.hpp"
#include "nilaffine/liealg/series.hpp"
#include "nilaffine/lr/lr_structure.hpp"
#include "nilaffine/obstruction/obstruct.hpp"
#include "nilaffine/obstruction/poly.hpp"

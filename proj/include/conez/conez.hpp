#pragma once

// Convenience umbrella: the whole library in one include.

#include "conez/dual.hpp"
#include "conez/eigen.hpp"
#include "conez/errors.hpp"
#include "conez/io.hpp"
#include "conez/lorentz.hpp"
#include "conez/matrix.hpp"
#include "conez/rng.hpp"
#include "conez/verify.hpp"
#include "conez/zcone.hpp"

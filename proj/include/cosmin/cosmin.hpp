#pragma once

#include "cosmin/cosine_poly.hpp"
#include "cosmin/errors.hpp"
#include "cosmin/exponent_set.hpp"
#include "cosmin/json_io.hpp"
#include "cosmin/minimize.hpp"
#include "cosmin/rational.hpp"
#include "cosmin/search.hpp"
#include "cosmin/verify.hpp"

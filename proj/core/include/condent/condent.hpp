#pragma once

#include "condent/convexlab.hpp"
#include "condent/core.hpp"
#include "condent/entropy.hpp"
#include "condent/error.hpp"
#include "condent/io.hpp"
#include "condent/majorization.hpp"
#include "condent/params.hpp"
#include "condent/rational.hpp"
#include "condent/rng.hpp"
#include "condent/simplex.hpp"
#include "condent/thermo.hpp"
#include "condent/transform.hpp"

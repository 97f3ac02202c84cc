// Umbrella header.
#pragma once

#include "complex_rational.hpp"
#include "mixed_polynomial.hpp"
#include "parser.hpp"
#include "polar.hpp"
#include "algebra.hpp"
#include "discgeom.hpp"
#include "rng.hpp"
#include "thomprobe.hpp"
#include "milnorprobe.hpp"
#include "report.hpp"
#include "fixtures.hpp"
#include "analysis.hpp"

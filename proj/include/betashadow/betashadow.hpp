// Convenience umbrella: the whole library except the CLI front end.
#pragma once

#include "errors.hpp"
#include "scalar.hpp"
#include "interval.hpp"
#include "maps.hpp"
#include "orbits.hpp"
#include "shadowing.hpp"
#include "transitivity.hpp"
#include "witness.hpp"
#include "renorm.hpp"
#include "expansions.hpp"
#include "serialize.hpp"

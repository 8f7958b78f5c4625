#pragma once

#include "dihsum/bounds.hpp"
#include "dihsum/census.hpp"
#include "dihsum/collisions.hpp"
#include "dihsum/errors.hpp"
#include "dihsum/exact.hpp"
#include "dihsum/expectation.hpp"
#include "dihsum/group.hpp"
#include "dihsum/sampling.hpp"
#include "dihsum/setops.hpp"

#pragma once

#include "aftail/af_tower.hpp"
#include "aftail/cylinder.hpp"
#include "aftail/diagram.hpp"
#include "aftail/diagram_io.hpp"
#include "aftail/error.hpp"
#include "aftail/expectation.hpp"
#include "aftail/groupoid.hpp"
#include "aftail/harness.hpp"
#include "aftail/path_space.hpp"
#include "aftail/random.hpp"
#include "aftail/rational.hpp"
#include "aftail/scalar.hpp"

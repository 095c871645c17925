#pragma once

#include "conelab/basis.hpp"
#include "conelab/cone.hpp"
#include "conelab/constants.hpp"
#include "conelab/counterexample.hpp"
#include "conelab/isomorphism.hpp"
#include "conelab/json_io.hpp"
#include "conelab/parallel.hpp"
#include "conelab/path.hpp"
#include "conelab/polyline.hpp"
#include "conelab/rational.hpp"
#include "conelab/seqvector.hpp"
#include "conelab/tail.hpp"

#pragma once

#include "bgc/binary_matrix.hpp"
#include "bgc/combinations.hpp"
#include "bgc/decoder.hpp"
#include "bgc/encoder.hpp"
#include "bgc/error.hpp"
#include "bgc/hetero.hpp"
#include "bgc/metrics.hpp"
#include "bgc/params.hpp"
#include "bgc/rational.hpp"
#include "bgc/sim.hpp"

#pragma once

#include "fsr/core.hpp"
#include "fsr/dft.hpp"
#include "fsr/metrics.hpp"
#include "fsr/pgm.hpp"
#include "fsr/reconstruct.hpp"
#include "fsr/reduce.hpp"
#include "fsr/sampling.hpp"
#include "fsr/weights.hpp"

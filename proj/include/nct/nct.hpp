#pragma once

#include "nct/errors.hpp"
#include "nct/gabor.hpp"
#include "nct/parallel.hpp"
#include "nct/report.hpp"
#include "nct/rng.hpp"
#include "nct/spectral.hpp"
#include "nct/tf.hpp"
#include "nct/twisted.hpp"
#include "nct/version.hpp"
#include "nct/windows.hpp"

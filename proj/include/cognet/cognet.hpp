#ifndef COGNET_COGNET_HPP
#define COGNET_COGNET_HPP

// Umbrella header for the analysis and simulation library. The YAML reader
// lives in cognet/scenario_io.hpp and needs yaml-cpp.

#include "cognet/closed_form.hpp"
#include "cognet/errors.hpp"
#include "cognet/fading.hpp"
#include "cognet/geometry.hpp"
#include "cognet/inversion.hpp"
#include "cognet/model.hpp"
#include "cognet/montecarlo.hpp"
#include "cognet/network_metrics.hpp"
#include "cognet/protocol_kernel.hpp"
#include "cognet/quadrature.hpp"
#include "cognet/random.hpp"
#include "cognet/special_functions.hpp"

#endif // COGNET_COGNET_HPP

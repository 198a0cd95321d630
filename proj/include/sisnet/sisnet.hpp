#ifndef SISNET_SISNET_HPP
#define SISNET_SISNET_HPP

#include "sisnet/config.hpp"
#include "sisnet/csv.hpp"
#include "sisnet/errors.hpp"
#include "sisnet/generators.hpp"
#include "sisnet/graph.hpp"
#include "sisnet/jsr.hpp"
#include "sisnet/matrix.hpp"
#include "sisnet/meanfield.hpp"
#include "sisnet/montecarlo.hpp"
#include "sisnet/random.hpp"
#include "sisnet/spectral_radius.hpp"
#include "sisnet/switching.hpp"
#include "sisnet/threshold.hpp"

#endif // SISNET_SISNET_HPP

// moebius.hpp - umbrella header

#pragma once

#include "moebius/core.hpp"
#include "moebius/dynamics.hpp"
#include "moebius/lattice.hpp"
#include "moebius/parallel.hpp"
#include "moebius/spectra.hpp"
#include "moebius/transport.hpp"

#pragma once

// Umbrella header for the quantum parity check simulator.

#include "qpc/csv.hpp"
#include "qpc/detection.hpp"
#include "qpc/elements.hpp"
#include "qpc/engine.hpp"
#include "qpc/error.hpp"
#include "qpc/feedforward.hpp"
#include "qpc/fock.hpp"
#include "qpc/imperfections.hpp"
#include "qpc/rng.hpp"
#include "qpc/scenario.hpp"

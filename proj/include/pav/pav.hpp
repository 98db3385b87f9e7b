#pragma once

// Umbrella header for the polarized-abelian-variety duality toolkit.

#include "pav/error.hpp"
#include "pav/matrix.hpp"
#include "pav/smith.hpp"
#include "pav/pfaffian.hpp"
#include "pav/unimodular.hpp"
#include "pav/type_vector.hpp"
#include "pav/polarization.hpp"
#include "pav/moduli.hpp"
#include "pav/torus.hpp"
#include "pav/exterior.hpp"
#include "pav/fourier.hpp"
#include "pav/json_io.hpp"

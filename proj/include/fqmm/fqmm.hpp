#pragma once

#include "fqmm/coupling_operator.hpp"
#include "fqmm/dyadic_haar.hpp"
#include "fqmm/error.hpp"
#include "fqmm/io.hpp"
#include "fqmm/level_array.hpp"
#include "fqmm/potential.hpp"
#include "fqmm/qubit_array.hpp"
#include "fqmm/verification.hpp"
#include "fqmm/wigner.hpp"

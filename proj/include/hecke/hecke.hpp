#pragma once

#include "hecke/bounds.hpp"
#include "hecke/coeff_file.hpp"
#include "hecke/coefficients.hpp"
#include "hecke/errors.hpp"
#include "hecke/weight_bound.hpp"
#include "hecke/majorant.hpp"
#include "hecke/parallel.hpp"
#include "hecke/prime_source.hpp"
#include "hecke/report.hpp"
#include "hecke/satake.hpp"
#include "hecke/sieve.hpp"
#include "hecke/smooth.hpp"
#include "hecke/sums.hpp"
#include "hecke/zeta.hpp"

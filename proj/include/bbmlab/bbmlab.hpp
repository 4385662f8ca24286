#pragma once

#include "bbmlab/aviles_giga.hpp"
#include "bbmlab/b_space.hpp"
#include "bbmlab/bbm_kernels.hpp"
#include "bbmlab/catalog.hpp"
#include "bbmlab/error.hpp"
#include "bbmlab/grid.hpp"
#include "bbmlab/jump_spec.hpp"
#include "bbmlab/jump_theory.hpp"
#include "bbmlab/mollifier.hpp"
#include "bbmlab/parallel.hpp"
#include "bbmlab/quadrature.hpp"
#include "bbmlab/report.hpp"
#include "bbmlab/variation_1d.hpp"

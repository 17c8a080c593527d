#pragma once

#include "singstep/bounds.hpp"
#include "singstep/config.hpp"
#include "singstep/convergence.hpp"
#include "singstep/core_model.hpp"
#include "singstep/doc_kernels.hpp"
#include "singstep/errors.hpp"
#include "singstep/l1_subdiffusion.hpp"
#include "singstep/mittag_leffler.hpp"
#include "singstep/ode_steppers.hpp"
#include "singstep/pde_solver.hpp"
#include "singstep/presets.hpp"
#include "singstep/runner.hpp"
#include "singstep/special_functions.hpp"
#include "singstep/tridiagonal.hpp"

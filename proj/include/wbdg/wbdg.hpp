#pragma once

#include "basis.hpp"
#include "boundary.hpp"
#include "conservative.hpp"
#include "discretization.hpp"
#include "error.hpp"
#include "euler.hpp"
#include "field.hpp"
#include "flux.hpp"
#include "limiter.hpp"
#include "mesh.hpp"
#include "omega.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "regime.hpp"
#include "residual.hpp"
#include "ripa.hpp"
#include "stage_solver.hpp"
#include "stepper.hpp"
#include "harness/case_spec.hpp"
#include "harness/catalog.hpp"
#include "harness/potentials.hpp"
#include "harness/profiles.hpp"
#include "harness/run.hpp"

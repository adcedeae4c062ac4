#pragma once

#include "mpmdl/archive.hpp"
#include "mpmdl/baselines.hpp"
#include "mpmdl/codec.hpp"
#include "mpmdl/dynamics.hpp"
#include "mpmdl/error.hpp"
#include "mpmdl/evaluator.hpp"
#include "mpmdl/generator.hpp"
#include "mpmdl/indicators.hpp"
#include "mpmdl/insga3.hpp"
#include "mpmdl/instance_io.hpp"
#include "mpmdl/model.hpp"
#include "mpmdl/nsga3.hpp"
#include "mpmdl/oracle.hpp"
#include "mpmdl/pareto.hpp"
#include "mpmdl/rng.hpp"
#include "mpmdl/solvers.hpp"

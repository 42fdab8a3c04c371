#pragma once
// Umbrella header: the whole library.

#include "wplab/basis.hpp"
#include "wplab/brute_force.hpp"
#include "wplab/density.hpp"
#include "wplab/evolution.hpp"
#include "wplab/experiments.hpp"
#include "wplab/observables.hpp"
#include "wplab/rydberg.hpp"
#include "wplab/special.hpp"
#include "wplab/states.hpp"

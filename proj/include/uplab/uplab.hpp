// Umbrella header.
#ifndef UPLAB_UPLAB_HPP
#define UPLAB_UPLAB_HPP

#include "uplab/numerics.hpp"
#include "uplab/core.hpp"
#include "uplab/concentration.hpp"
#include "uplab/transforms.hpp"
#include "uplab/operators.hpp"
#include "uplab/verdict.hpp"
#include "uplab/bounds.hpp"
#include "uplab/io.hpp"
#include "uplab/harness/signals.hpp"
#include "uplab/harness/scenario.hpp"
#include "uplab/harness/run.hpp"
#include "uplab/harness/selftest.hpp"

#endif

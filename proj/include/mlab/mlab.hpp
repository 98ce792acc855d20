#pragma once

#include "mlab/arith.hpp"
#include "mlab/characters.hpp"
#include "mlab/cli.hpp"
#include "mlab/complex_eval.hpp"
#include "mlab/core.hpp"
#include "mlab/experiments.hpp"
#include "mlab/explicit_formula.hpp"
#include "mlab/gamma.hpp"
#include "mlab/identities.hpp"
#include "mlab/sieve.hpp"
#include "mlab/zeta.hpp"

// SPDX-License-Identifier: Apache-2.0
#pragma once

// Everything except the command-line layer (supercong/cli.hpp).

#include "supercong/bernoulli.hpp"
#include "supercong/error.hpp"
#include "supercong/evaluate.hpp"
#include "supercong/fracbinom.hpp"
#include "supercong/modring.hpp"
#include "supercong/primes.hpp"
#include "supercong/rational.hpp"
#include "supercong/scanners.hpp"
#include "supercong/seqsums.hpp"
#include "supercong/statements.hpp"
#include "supercong/verify.hpp"

#pragma once

#include "mfhess/errors.hpp"
#include "mfhess/rational.hpp"
#include "mfhess/linalg.hpp"
#include "mfhess/random.hpp"
#include "mfhess/rootdata.hpp"
#include "mfhess/polynomial.hpp"
#include "mfhess/liealgebra.hpp"
#include "mfhess/poisson.hpp"
#include "mfhess/principal.hpp"
#include "mfhess/invariants.hpp"
#include "mfhess/mftranslate.hpp"
#include "mfhess/hessenberg.hpp"
#include "mfhess/symplectic.hpp"
#include "mfhess/cache.hpp"
#include "mfhess/verifier.hpp"

#pragma once

#include "rigidlab/certificate.hpp"
#include "rigidlab/crossval.hpp"
#include "rigidlab/framework.hpp"
#include "rigidlab/generate.hpp"
#include "rigidlab/hypergraph.hpp"
#include "rigidlab/instance.hpp"
#include "rigidlab/mapdecomp.hpp"
#include "rigidlab/matrix.hpp"
#include "rigidlab/prng.hpp"
#include "rigidlab/purecond.hpp"
#include "rigidlab/realize.hpp"
#include "rigidlab/report.hpp"
#include "rigidlab/rigidmatrix.hpp"
#include "rigidlab/scalar.hpp"

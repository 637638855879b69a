#pragma once

#include "baselines.hpp"
#include "cheb.hpp"
#include "errors.hpp"
#include "filon.hpp"
#include "gauss.hpp"
#include "hermite.hpp"
#include "levin.hpp"
#include "numkernel.hpp"
#include "problem.hpp"
#include "quadrature.hpp"
#include "result.hpp"
#include "series.hpp"
#include "tsvd.hpp"

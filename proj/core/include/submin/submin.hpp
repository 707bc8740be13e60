#pragma once

#include "submin/blocks.hpp"
#include "submin/bruteforce.hpp"
#include "submin/continuous.hpp"
#include "submin/domain.hpp"
#include "submin/duality.hpp"
#include "submin/errors.hpp"
#include "submin/examples.hpp"
#include "submin/extension.hpp"
#include "submin/isotonic.hpp"
#include "submin/solvers.hpp"

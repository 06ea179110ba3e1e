#pragma once

#include "twobc/boundary.hpp"
#include "twobc/classifier.hpp"
#include "twobc/errors.hpp"
#include "twobc/hilbert.hpp"
#include "twobc/histories.hpp"
#include "twobc/random.hpp"
#include "twobc/scenarios.hpp"

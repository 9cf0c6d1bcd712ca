#pragma once

#include "partbias/asymptote.hpp"
#include "partbias/core.hpp"
#include "partbias/counter.hpp"
#include "partbias/error.hpp"
#include "partbias/geometry.hpp"
#include "partbias/progression.hpp"
#include "partbias/rational.hpp"

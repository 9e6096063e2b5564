#pragma once

#include "catalankit/cdf.hpp"
#include "catalankit/constants.hpp"
#include "catalankit/errors.hpp"
#include "catalankit/lerch.hpp"
#include "catalankit/quadrature.hpp"
#include "catalankit/rational_poly.hpp"
#include "catalankit/report.hpp"
#include "catalankit/representations.hpp"

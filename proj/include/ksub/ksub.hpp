#ifndef KSUB_KSUB_HPP_
#define KSUB_KSUB_HPP_

#include "ksub/algorithms.hpp"
#include "ksub/core.hpp"
#include "ksub/error.hpp"
#include "ksub/generate.hpp"
#include "ksub/oracles.hpp"
#include "ksub/problem.hpp"
#include "ksub/properties.hpp"
#include "ksub/validators.hpp"

#endif // KSUB_KSUB_HPP_

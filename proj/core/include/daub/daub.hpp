#pragma once

#include "daub/accuracy.hpp"
#include "daub/defaults.hpp"
#include "daub/double_word.hpp"
#include "daub/dyadic.hpp"
#include "daub/errors.hpp"
#include "daub/evaluators.hpp"
#include "daub/filters.hpp"
#include "daub/interpolators.hpp"
#include "daub/io.hpp"
#include "daub/transforms.hpp"

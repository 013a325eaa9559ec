#pragma once

#include "motzkin/bijections.hpp"
#include "motzkin/enumerate.hpp"
#include "motzkin/errors.hpp"
#include "motzkin/path.hpp"
#include "motzkin/tree.hpp"
#include "motzkin/verify.hpp"

#pragma once

#include "satset/errors.hpp"
#include "satset/field.hpp"
#include "satset/geometry.hpp"
#include "satset/saturate.hpp"
#include "satset/bounds.hpp"
#include "satset/codes.hpp"
#include "satset/io.hpp"

#pragma once

#include "codlib/canonical.hpp"
#include "codlib/combinatorial.hpp"
#include "codlib/decompose.hpp"
#include "codlib/design.hpp"
#include "codlib/errors.hpp"
#include "codlib/group.hpp"
#include "codlib/matrix.hpp"
#include "codlib/polar.hpp"
#include "codlib/random.hpp"
#include "codlib/representation.hpp"
#include "codlib/serialization.hpp"

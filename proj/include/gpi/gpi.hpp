#pragma once

#include "gpi/action_compat.hpp"
#include "gpi/algebra.hpp"
#include "gpi/brute.hpp"
#include "gpi/brute_rep.hpp"
#include "gpi/cohomology.hpp"
#include "gpi/error.hpp"
#include "gpi/field.hpp"
#include "gpi/group.hpp"
#include "gpi/linalg.hpp"
#include "gpi/module.hpp"
#include "gpi/pairs.hpp"
#include "gpi/perm_group.hpp"
#include "gpi/pipeline.hpp"
#include "gpi/poly.hpp"
#include "gpi/rep.hpp"
#include "gpi/tame_enum.hpp"

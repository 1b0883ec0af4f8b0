#pragma once

#include "report.hpp"
#include "group.hpp"
#include "isomorphism.hpp"
#include "group_library.hpp"
#include "brace.hpp"
#include "grun.hpp"
#include "fp.hpp"
#include "matrix_group.hpp"
#include "constructions.hpp"
#include "io.hpp"

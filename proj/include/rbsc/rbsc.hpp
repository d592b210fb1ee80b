#pragma once

#include "rbsc/error.hpp"
#include "rbsc/geometry.hpp"
#include "rbsc/model.hpp"
#include "rbsc/source_problems.hpp"
#include "rbsc/io.hpp"
#include "rbsc/kernel.hpp"
#include "rbsc/oracle.hpp"
#include "rbsc/fpt.hpp"
#include "rbsc/dp.hpp"
#include "rbsc/generators.hpp"

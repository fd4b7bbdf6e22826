#pragma once

#include "ldrad/bounds.hpp"
#include "ldrad/field.hpp"
#include "ldrad/integrator.hpp"
#include "ldrad/kinematics.hpp"
#include "ldrad/serialize.hpp"
#include "ldrad/sweep.hpp"
#include "ldrad/verify.hpp"

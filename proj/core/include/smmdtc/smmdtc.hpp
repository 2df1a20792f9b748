#pragma once

#include "smmdtc/analysis.hpp"
#include "smmdtc/errors.hpp"
#include "smmdtc/evolution.hpp"
#include "smmdtc/linalg.hpp"
#include "smmdtc/model.hpp"
#include "smmdtc/observables.hpp"
#include "smmdtc/spin_algebra.hpp"
#include "smmdtc/states.hpp"

#pragma once

#include "cfc/builders.hpp"
#include "cfc/gates.hpp"
#include "cfc/histories.hpp"
#include "cfc/protocol.hpp"
#include "cfc/serialize.hpp"
#include "cfc/state.hpp"
#include "cfc/stats.hpp"
#include "cfc/verdicts.hpp"

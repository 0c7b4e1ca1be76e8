// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dyntdd/channel.hpp"
#include "dyntdd/engine.hpp"
#include "dyntdd/experiment.hpp"
#include "dyntdd/frame.hpp"
#include "dyntdd/mac.hpp"
#include "dyntdd/metrics.hpp"
#include "dyntdd/phy.hpp"
#include "dyntdd/plot.hpp"
#include "dyntdd/powerctl.hpp"
#include "dyntdd/random.hpp"
#include "dyntdd/topology.hpp"
#include "dyntdd/traffic.hpp"
#include "dyntdd/units.hpp"

#pragma once

#include "wearout/channel.hpp"
#include "wearout/code_size.hpp"
#include "wearout/dp_achievability.hpp"
#include "wearout/dp_converse.hpp"
#include "wearout/envelope.hpp"
#include "wearout/majorization.hpp"
#include "wearout/parallel.hpp"
#include "wearout/prob.hpp"
#include "wearout/schedule.hpp"
#include "wearout/simulator.hpp"

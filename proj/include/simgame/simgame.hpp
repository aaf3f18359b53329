#pragma once

#include "cli.hpp"
#include "coordination.hpp"
#include "equilibrium.hpp"
#include "gadget.hpp"
#include "game.hpp"
#include "geometry.hpp"
#include "gptg.hpp"
#include "io.hpp"
#include "password.hpp"
#include "simulation.hpp"
#include "tcg.hpp"

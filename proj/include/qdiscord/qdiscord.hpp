#pragma once

#include "qdiscord/linalg.hpp"
#include "qdiscord/states.hpp"
#include "qdiscord/nelder_mead.hpp"
#include "qdiscord/correlations.hpp"
#include "qdiscord/koashi_winter.hpp"
#include "qdiscord/protocols.hpp"
#include "qdiscord/sweep.hpp"

#pragma once

#include "spinflip/bloch.hpp"
#include "spinflip/error.hpp"
#include "spinflip/fixtures.hpp"
#include "spinflip/linalg.hpp"
#include "spinflip/machines.hpp"
#include "spinflip/protrans.hpp"
#include "spinflip/states.hpp"

#pragma once

#include "qfe/bit.hpp"
#include "qfe/errors.hpp"
#include "qfe/games.hpp"
#include "qfe/hfe.hpp"
#include "qfe/indist.hpp"
#include "qfe/qubit.hpp"
#include "qfe/random.hpp"
#include "qfe/xi_cipher.hpp"

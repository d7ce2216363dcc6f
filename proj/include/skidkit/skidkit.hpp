#pragma once

// Umbrella header for the three-tier identifier library.

#include "skidkit/aes256.hpp"
#include "skidkit/bench.hpp"
#include "skidkit/blake3.hpp"
#include "skidkit/bytes.hpp"
#include "skidkit/clock.hpp"
#include "skidkit/errors.hpp"
#include "skidkit/keyring.hpp"
#include "skidkit/secure.hpp"
#include "skidkit/sequence.hpp"
#include "skidkit/skeid.hpp"
#include "skidkit/skid.hpp"
#include "skidkit/vectors.hpp"

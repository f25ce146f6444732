#pragma once

#include "qkdsec/attacks.hpp"
#include "qkdsec/bitstring.hpp"
#include "qkdsec/bounds.hpp"
#include "qkdsec/coupling.hpp"
#include "qkdsec/distribution_io.hpp"
#include "qkdsec/errors.hpp"
#include "qkdsec/logprob.hpp"
#include "qkdsec/probdist.hpp"
#include "qkdsec/quantum_detect.hpp"
#include "qkdsec/rngtest.hpp"

#pragma once

// Quantum coherence manipulation toolkit: decides whether a state's
// coherence can be deterministically purified or probabilistically
// enhanced, with the measures, channel simulation, witnesses, and
// brute-force oracles needed to verify the verdicts numerically.

#include "qcoh/bloch.hpp"
#include "qcoh/checks.hpp"
#include "qcoh/density.hpp"
#include "qcoh/eig.hpp"
#include "qcoh/enhancement.hpp"
#include "qcoh/errors.hpp"
#include "qcoh/matrix.hpp"
#include "qcoh/measures.hpp"
#include "qcoh/oracle.hpp"
#include "qcoh/purification.hpp"
#include "qcoh/random_states.hpp"
#include "qcoh/report.hpp"
#include "qcoh/rng.hpp"
#include "qcoh/statefile.hpp"

#ifndef FGCALC_FGCALC_HPP
#define FGCALC_FGCALC_HPP

// Umbrella header for the library (the CLI front-end lives in cli.hpp and
// pulls in CLI11/json on top of this).

#include "fgcalc/divisor.hpp"
#include "fgcalc/error.hpp"
#include "fgcalc/fgl.hpp"
#include "fgcalc/hopf.hpp"
#include "fgcalc/hopf_io.hpp"
#include "fgcalc/numeric.hpp"
#include "fgcalc/parse.hpp"
#include "fgcalc/print.hpp"
#include "fgcalc/residue.hpp"
#include "fgcalc/ring.hpp"
#include "fgcalc/series.hpp"
#include "fgcalc/weierstrass.hpp"

#endif

#ifndef BICIRC_BICIRC_HPP
#define BICIRC_BICIRC_HPP

// Umbrella header: r-circulant matrices over bi-periodic Fibonacci numbers,
// their norms, eigenvalues, determinants, and the verification engine.

#include "bicirc/circulant.hpp"
#include "bicirc/errors.hpp"
#include "bicirc/norms.hpp"
#include "bicirc/numeric.hpp"
#include "bicirc/report.hpp"
#include "bicirc/sequences.hpp"
#include "bicirc/spectral.hpp"
#include "bicirc/verify.hpp"

#endif  // BICIRC_BICIRC_HPP

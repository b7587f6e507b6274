#ifndef GSM_GSM_HPP
#define GSM_GSM_HPP

// Everything at once.

#include "gsm/matrix.hpp"
#include "gsm/graph.hpp"
#include "gsm/linalg.hpp"
#include "gsm/circulant.hpp"
#include "gsm/analysis.hpp"
#include "gsm/synthesis.hpp"
#include "gsm/io.hpp"
#include "gsm/random.hpp"
#include "gsm/svg.hpp"
#include "gsm/figure.hpp"
#include "gsm/verify.hpp"
#include "gsm/commands.hpp"

#endif  // GSM_GSM_HPP

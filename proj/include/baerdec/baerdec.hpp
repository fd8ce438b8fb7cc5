// Everything except the command line, which also needs CLI11 and nlohmann/json.

#ifndef BAERDEC_BAERDEC_HPP
#define BAERDEC_BAERDEC_HPP

#include "numeric.hpp"
#include "star_ring.hpp"
#include "properties.hpp"
#include "functional_parser.hpp"
#include "engine.hpp"
#include "structure.hpp"
#include "fixtures.hpp"
#include "matrix_io.hpp"
#include "selfcheck.hpp"

#endif  // BAERDEC_BAERDEC_HPP

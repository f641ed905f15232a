#ifndef Z4CODES_Z4CODES_HPP
#define Z4CODES_Z4CODES_HPP

#include "binary_table.hpp"
#include "codes.hpp"
#include "construct.hpp"
#include "cyclotomic.hpp"
#include "engine.hpp"
#include "error.hpp"
#include "factor.hpp"
#include "gray.hpp"
#include "packed.hpp"
#include "poly.hpp"
#include "records.hpp"
#include "reference_codes.hpp"
#include "search.hpp"

#endif // Z4CODES_Z4CODES_HPP

#ifndef TPLAG_TPLAG_HPP
#define TPLAG_TPLAG_HPP

// Umbrella header: accurate decomposition pipeline, exact oracle, and I/O.

#include "tplag/bd.hpp"
#include "tplag/errors.hpp"
#include "tplag/io.hpp"
#include "tplag/lagrange_ls.hpp"
#include "tplag/matrix.hpp"
#include "tplag/naive.hpp"
#include "tplag/node_config.hpp"
#include "tplag/oracle/exact.hpp"
#include "tplag/oracle/highprec.hpp"
#include "tplag/oracle/refdata.hpp"
#include "tplag/tn_kernels.hpp"

#endif  // TPLAG_TPLAG_HPP

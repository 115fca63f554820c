#ifndef FINEGRAIN_FINEGRAIN_HPP
#define FINEGRAIN_FINEGRAIN_HPP

#include "bitvec.hpp"
#include "certificate.hpp"
#include "clique.hpp"
#include "cnf.hpp"
#include "encoding.hpp"
#include "error.hpp"
#include "field.hpp"
#include "generator.hpp"
#include "limits.hpp"
#include "linalg.hpp"
#include "monotone.hpp"
#include "ov.hpp"
#include "regime.hpp"
#include "threshold.hpp"

#endif

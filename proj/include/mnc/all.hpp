#pragma once

#include "mnc/axioms.hpp"
#include "mnc/catalog.hpp"
#include "mnc/cauchy.hpp"
#include "mnc/errors.hpp"
#include "mnc/hausdorff_oracle.hpp"
#include "mnc/interval.hpp"
#include "mnc/json_io.hpp"
#include "mnc/mnc.hpp"
#include "mnc/phi.hpp"
#include "mnc/polynomial.hpp"
#include "mnc/quadrature.hpp"
#include "mnc/random_families.hpp"
#include "mnc/random_sets.hpp"
#include "mnc/set_family.hpp"
#include "mnc/structured_set.hpp"
#include "mnc/support.hpp"

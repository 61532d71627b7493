#pragma once

#include "brauer/arith.hpp"
#include "brauer/exterior.hpp"
#include "brauer/matrix.hpp"
#include "brauer/smith.hpp"
#include "brauer/lattice.hpp"
#include "brauer/polynomial.hpp"
#include "brauer/abelian.hpp"
#include "brauer/djp.hpp"
#include "brauer/steenrod.hpp"
#include "brauer/hotchkiss.hpp"
#include "brauer/driver.hpp"
#include "brauer/forms.hpp"
#include "brauer/campaign.hpp"
#include "brauer/report.hpp"
#include "brauer/verify.hpp"

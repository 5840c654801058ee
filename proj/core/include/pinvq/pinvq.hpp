#pragma once

#include "pinvq/adversary.hpp"
#include "pinvq/creal.hpp"
#include "pinvq/errors.hpp"
#include "pinvq/exact.hpp"
#include "pinvq/gadget.hpp"
#include "pinvq/matrix.hpp"
#include "pinvq/pinv_iter.hpp"
#include "pinvq/rational.hpp"
#include "pinvq/text_io.hpp"

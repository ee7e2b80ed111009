#pragma once

#include "qpt/common.hpp"
#include "qpt/conv_schemes.hpp"
#include "qpt/error.hpp"
#include "qpt/image_pipeline.hpp"
#include "qpt/instrument.hpp"
#include "qpt/oracle.hpp"
#include "qpt/paired_transform.hpp"
#include "qpt/pgm.hpp"
#include "qpt/qsim.hpp"
#include "qpt/verify.hpp"

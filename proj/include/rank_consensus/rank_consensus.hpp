// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rank_consensus/consensus.hpp"
#include "rank_consensus/correlation.hpp"
#include "rank_consensus/deviations.hpp"
#include "rank_consensus/errors.hpp"
#include "rank_consensus/io.hpp"
#include "rank_consensus/numeric.hpp"
#include "rank_consensus/outliers.hpp"
#include "rank_consensus/qsupport.hpp"
#include "rank_consensus/ranking.hpp"

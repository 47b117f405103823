// SPDX-License-Identifier: Apache-2.0
#pragma once

// Umbrella header.
#include "confluence.hpp"
#include "curvature.hpp"
#include "cyclotomic.hpp"
#include "dynamics.hpp"
#include "galois.hpp"
#include "matrix.hpp"
#include "parse.hpp"
#include "qdiff.hpp"
#include "report.hpp"
#include "solutions.hpp"
#include "tower.hpp"
#include "triviality.hpp"
#include "version.hpp"

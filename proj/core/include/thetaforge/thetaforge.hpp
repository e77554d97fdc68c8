#pragma once

#include "thetaforge/coding.hpp"
#include "thetaforge/combinatorics.hpp"
#include "thetaforge/error.hpp"
#include "thetaforge/graph.hpp"
#include "thetaforge/homrelax.hpp"
#include "thetaforge/linalg.hpp"
#include "thetaforge/projrank.hpp"
#include "thetaforge/sdp.hpp"
#include "thetaforge/theta.hpp"
#include "thetaforge/version.hpp"

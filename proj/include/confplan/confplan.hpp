#pragma once

#include "confplan/discrete_oracle.hpp"
#include "confplan/error.hpp"
#include "confplan/graph.hpp"
#include "confplan/invariants.hpp"
#include "confplan/io.hpp"
#include "confplan/planner.hpp"
#include "confplan/probe.hpp"
#include "confplan/random_planner.hpp"
#include "confplan/rational.hpp"
#include "confplan/rooted_tree.hpp"
#include "confplan/sampling.hpp"
#include "confplan/suite.hpp"
#include "confplan/trajectory.hpp"

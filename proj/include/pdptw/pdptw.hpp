#pragma once

#include "pdptw/bounds.hpp"
#include "pdptw/chromosome.hpp"
#include "pdptw/config.hpp"
#include "pdptw/dynamic.hpp"
#include "pdptw/errors.hpp"
#include "pdptw/evolution.hpp"
#include "pdptw/instance.hpp"
#include "pdptw/lilim.hpp"
#include "pdptw/oracle.hpp"
#include "pdptw/pareto.hpp"
#include "pdptw/report.hpp"
#include "pdptw/schedule.hpp"
#include "pdptw/synthetic.hpp"

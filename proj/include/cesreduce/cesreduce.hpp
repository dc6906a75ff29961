#ifndef CESREDUCE_CESREDUCE_HPP
#define CESREDUCE_CESREDUCE_HPP

#include "ces.hpp"
#include "compare.hpp"
#include "config.hpp"
#include "fuzzy.hpp"
#include "io.hpp"
#include "numeric.hpp"
#include "pareto.hpp"
#include "quanta.hpp"
#include "sampling.hpp"
#include "scalarization.hpp"
#include "workbench.hpp"

#endif // CESREDUCE_CESREDUCE_HPP

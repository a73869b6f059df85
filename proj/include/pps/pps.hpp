#pragma once

#include "pps/errors.hpp"
#include "pps/graph.hpp"
#include "pps/planar.hpp"
#include "pps/layering.hpp"
#include "pps/decomposer.hpp"
#include "pps/product.hpp"
#include "pps/pipeline.hpp"
#include "pps/verifier.hpp"
#include "pps/generate.hpp"
#include "pps/io.hpp"

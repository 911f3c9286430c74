#pragma once

#include "ksetlab/bounds.hpp"
#include "ksetlab/circular_sequence.hpp"
#include "ksetlab/decomposability.hpp"
#include "ksetlab/digraph.hpp"
#include "ksetlab/geometry.hpp"
#include "ksetlab/harness.hpp"
#include "ksetlab/io.hpp"
#include "ksetlab/rational.hpp"
#include "ksetlab/verify.hpp"

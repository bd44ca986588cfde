#pragma once

#include "ifi/database.hpp"
#include "ifi/database_io.hpp"
#include "ifi/decoder.hpp"
#include "ifi/entropy.hpp"
#include "ifi/errors.hpp"
#include "ifi/experiment.hpp"
#include "ifi/hard_instance.hpp"
#include "ifi/manifest.hpp"
#include "ifi/permutation.hpp"
#include "ifi/random.hpp"
#include "ifi/rational.hpp"
#include "ifi/sketch.hpp"
#include "ifi/sketch_io.hpp"

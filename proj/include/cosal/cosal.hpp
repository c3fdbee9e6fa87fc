#pragma once

#include "cosal/adjusted_distance.hpp"
#include "cosal/analysis.hpp"
#include "cosal/context_stats.hpp"
#include "cosal/core.hpp"
#include "cosal/embedding_store.hpp"
#include "cosal/eval_harness.hpp"
#include "cosal/model_io.hpp"
#include "cosal/salience.hpp"
#include "cosal/sentence_embed.hpp"
#include "cosal/summarizer.hpp"
#include "cosal/tokenize.hpp"

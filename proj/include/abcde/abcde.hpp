#pragma once

#include "abcde/affect.hpp"
#include "abcde/aggregate.hpp"
#include "abcde/body.hpp"
#include "abcde/cognition.hpp"
#include "abcde/demographics.hpp"
#include "abcde/error.hpp"
#include "abcde/ingestion.hpp"
#include "abcde/lexicon.hpp"
#include "abcde/matcher.hpp"
#include "abcde/pipeline.hpp"
#include "abcde/record.hpp"
#include "abcde/registry.hpp"
#include "abcde/text.hpp"
#include "abcde/tokenizer.hpp"

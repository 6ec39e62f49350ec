#pragma once

#include "cecp/bounds.hpp"
#include "cecp/error.hpp"
#include "cecp/ingest.hpp"
#include "cecp/ordinal.hpp"
#include "cecp/quantifiers.hpp"
#include "cecp/random.hpp"
#include "cecp/report.hpp"
#include "cecp/synth.hpp"
#include "cecp/windows.hpp"

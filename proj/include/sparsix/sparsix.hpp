#pragma once

#include "sparsix/diagnostics.hpp"
#include "sparsix/errors.hpp"
#include "sparsix/mmio.hpp"
#include "sparsix/pattern.hpp"
#include "sparsix/report_json.hpp"
#include "sparsix/sparsify.hpp"
#include "sparsix/spectral.hpp"
#include "sparsix/structgen.hpp"
#include "sparsix/types.hpp"

#pragma once

#include "virfuse/density.hpp"
#include "virfuse/fusion.hpp"
#include "virfuse/linalg.hpp"
#include "virfuse/poly.hpp"
#include "virfuse/rational.hpp"
#include "virfuse/verify.hpp"
#include "virfuse/verma.hpp"
#include "virfuse/vir_core.hpp"
#include "virfuse/zhu.hpp"

#pragma once

#include "padic_ducci/error.hpp"
#include "padic_ducci/rational.hpp"
#include "padic_ducci/padic.hpp"
#include "padic_ducci/linalg.hpp"
#include "padic_ducci/ducci.hpp"
#include "padic_ducci/spectral.hpp"
#include "padic_ducci/harness.hpp"
#include "padic_ducci/io.hpp"

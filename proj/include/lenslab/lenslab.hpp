#pragma once

#include "classify.hpp"
#include "classify_io.hpp"
#include "cli.hpp"
#include "errors.hpp"
#include "lens.hpp"
#include "matrix.hpp"
#include "obstruct.hpp"
#include "plumbing.hpp"
#include "plumbing_json.hpp"
#include "rational.hpp"
#include "simpleknot.hpp"
#include "surgery.hpp"

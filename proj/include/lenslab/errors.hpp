#pragma once

#include <stdexcept>
#include <string>

namespace lenslab {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// bad arguments from the caller (domain violations, malformed input)
struct invalid_params : error { using error::error; };

// exactlat
struct singular_matrix : error { using error::error; };
struct not_symmetric : error { using error::error; };

// plumbing
struct empty_box : error { using error::error; };
struct cycle_detected : error { using error::error; };
struct precondition_violated : error { using error::error; };
struct class_without_maximiser : error { using error::error; };

// surgery
struct degenerate_form : error { using error::error; };

// obstruct: hypotheses of the relevant proposition fail for these inputs,
// so no verdict is available either way
struct outside_applicability : error { using error::error; };
struct not_applicable : error { using error::error; };

}

#pragma once

#include <string>

#include "bdj/model.hpp"

namespace bdj {

/// Parses the JSON model schema:
///   { "R": 2,
///     "prefix": [[0.0, 1.0, 1.0]],
///     "tail": {"kind": "constant", "block": [[4.0, 1.0, 1.0]]} }
/// Rows are [mu, lambda1, ..., lambdaR]. A constant tail may omit the block
/// (the last prefix row repeats); a periodic tail cycles through it. Unknown
/// keys are rejected. Throws ParseError (with line/column) on malformed
/// text and SchemaError (with a field path) on semantic problems.
RateProfile parse_model_text(const std::string& text);

/// Reads and parses a model file. Throws SchemaError("file") when the path
/// cannot be read.
RateProfile parse_model_file(const std::string& path);

/// Convenience: parse and build in one step.
ProcessModel load_model(const std::string& path);

}  // namespace bdj

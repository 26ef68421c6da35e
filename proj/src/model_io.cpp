#include "bdj/model_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace bdj {

namespace {

using nlohmann::json;

// nlohmann reports byte offsets; convert to line/column for the error.
void throw_parse_error(const std::string& text, std::size_t byte, const std::string& msg) {
  std::int64_t line = 1, column = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  throw ParseError(line, column, msg);
}

double number_at(const json& j, const std::string& field) {
  if (!j.is_number()) throw SchemaError(field, "expected a number");
  return j.get<double>();
}

RateRow row_at(const json& j, int R, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected a row [mu, lambda1, ...]");
  if (static_cast<int>(j.size()) != R + 1) {
    throw SchemaError(path, "expected " + std::to_string(R + 1) + " entries, got " +
                                std::to_string(j.size()));
  }
  RateRow row;
  row.mu = number_at(j[0], path + ".mu");
  if (!std::isfinite(row.mu) || row.mu < 0.0) {
    throw SchemaError(path + ".mu", "rates must be finite and nonnegative");
  }
  for (int r = 1; r <= R; ++r) {
    const std::string field = path + ".lambda" + std::to_string(r);
    const double v = number_at(j[static_cast<std::size_t>(r)], field);
    if (!std::isfinite(v) || v < 0.0) {
      throw SchemaError(field, "rates must be finite and nonnegative");
    }
    row.lambda.push_back(v);
  }
  return row;
}

}  // namespace

RateProfile parse_model_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw_parse_error(text, e.byte > 0 ? e.byte - 1 : 0, e.what());
  }
  if (!doc.is_object()) throw SchemaError("", "model file must be a JSON object");
  for (const auto& item : doc.items()) {
    if (item.key() != "R" && item.key() != "prefix" && item.key() != "tail") {
      throw SchemaError(item.key(), "unknown key");
    }
  }

  RateProfile profile;
  if (!doc.contains("R")) throw SchemaError("R", "missing");
  if (!doc["R"].is_number_integer() || doc["R"].get<std::int64_t>() < 1 ||
      doc["R"].get<std::int64_t>() > 64) {
    throw SchemaError("R", "expected an integer in 1..64");
  }
  profile.R = doc["R"].get<int>();

  if (!doc.contains("prefix")) throw SchemaError("prefix", "missing");
  if (!doc["prefix"].is_array() || doc["prefix"].empty()) {
    throw SchemaError("prefix", "expected a non-empty list of rows");
  }
  for (std::size_t i = 0; i < doc["prefix"].size(); ++i) {
    profile.prefix.push_back(
        row_at(doc["prefix"][i], profile.R, "prefix[" + std::to_string(i) + "]"));
  }

  if (!doc.contains("tail")) throw SchemaError("tail", "missing");
  const json& tail = doc["tail"];
  if (!tail.is_object()) throw SchemaError("tail", "expected an object");
  for (const auto& item : tail.items()) {
    if (item.key() != "kind" && item.key() != "block") {
      throw SchemaError("tail." + item.key(), "unknown key");
    }
  }
  if (!tail.contains("kind") || !tail["kind"].is_string()) {
    throw SchemaError("tail.kind", "expected \"constant\" or \"periodic\"");
  }
  const std::string kind = tail["kind"].get<std::string>();
  if (kind == "constant") {
    profile.tail.kind = TailKind::constant;
  } else if (kind == "periodic") {
    profile.tail.kind = TailKind::periodic;
  } else {
    throw SchemaError("tail.kind", "expected \"constant\" or \"periodic\"");
  }
  if (tail.contains("block")) {
    if (!tail["block"].is_array()) throw SchemaError("tail.block", "expected a list of rows");
    for (std::size_t i = 0; i < tail["block"].size(); ++i) {
      profile.tail.block.push_back(
          row_at(tail["block"][i], profile.R, "tail.block[" + std::to_string(i) + "]"));
    }
  }
  if (profile.tail.kind == TailKind::periodic && profile.tail.block.empty()) {
    throw SchemaError("tail.block", "periodic tail needs a non-empty block");
  }
  if (profile.tail.kind == TailKind::constant && profile.tail.block.size() > 1) {
    throw SchemaError("tail.block", "constant tail takes at most one row");
  }
  return profile;
}

RateProfile parse_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("file", "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model_text(buf.str());
}

ProcessModel load_model(const std::string& path) {
  return build_model(parse_model_file(path));
}

}  // namespace bdj

#pragma once

#include <string>

#include "snc/io.hpp"

namespace snc::test {

inline std::string fixture(const std::string& name) { return std::string(SNC_FIXTURES) + "/" + name; }

inline io::Context fixture_context() { return {SNC_FIXTURES}; }

inline LineBundleModel load_bundle(const std::string& name) {
  return io::bundle_from_json(io::read_file(fixture(name)), fixture_context());
}

inline SncConfiguration load_configuration(const std::string& name) {
  return io::configuration_from_json(io::read_file(fixture(name)));
}

inline ExactScalar scalar(const char* modulus, const char* phase = "0") {
  return {parse_rational(modulus), parse_rational(phase)};
}

}  // namespace snc::test

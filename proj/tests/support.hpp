#pragma once

// Shared helpers for the unit and acceptance tests.

#include "hypermon/parser.hpp"
#include "hypermon/trace.hpp"

#include <initializer_list>
#include <memory>
#include <string>
#include <vector>

namespace hypermon::testing {

inline std::string programPath(const std::string& file) { return std::string(HYPERMON_PROGRAMS_DIR) + "/" + file; }
inline std::string tracePath(const std::string& file) { return std::string(HYPERMON_TRACES_DIR) + "/" + file; }

inline std::shared_ptr<const lang::Program> loadShared(const std::string& file) {
  return std::make_shared<const lang::Program>(lang::loadProgram(programPath(file)));
}

inline std::shared_ptr<const lang::Program> parseShared(const std::string& source) {
  return std::make_shared<const lang::Program>(lang::parseProgram(source));
}

inline std::vector<Integer> ints(std::initializer_list<long> values) {
  std::vector<Integer> out;
  for (long v : values) out.emplace_back(v);
  return out;
}

inline IoPair io(std::initializer_list<long> inputs, long output) { return {ints(inputs), Integer(output)}; }

/// f(x, y) = x on [0, 3] x [0, 4].
inline const char* kFirstSource = R"(class F {
  //@ domain x in [0, 3];
  //@ domain y in [0, 4];
  int f(int x, int y) { return x; }
})";

}  // namespace hypermon::testing

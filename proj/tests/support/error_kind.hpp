#pragma once

#include "regcoreset/error.hpp"

#include <gtest/gtest.h>

#include <functional>

namespace testsupport {

/// Runs `f` and returns the kind of the regcoreset::Error it throws.
inline regcoreset::ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const regcoreset::Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected regcoreset::Error";
  return regcoreset::ErrorKind::invalid_parameter;
}

}  // namespace testsupport

#pragma once

#include "doctest.h"
#include "infostab/error.hpp"

namespace infostab::testing {

template <class F>
void expect_error(ErrorKind kind, F&& f) {
  try {
    f();
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(to_string(e.kind()) == to_string(kind));
  }
}

}  // namespace infostab::testing

#pragma once

#include "doctest.h"
#include "wcc/error.hpp"

#include <functional>

// Kind of the wcc::Error thrown by f; fails the test if nothing is thrown.
inline wcc::ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const wcc::Error& e) {
        return e.kind();
    }
    FAIL("expected an exception");
    return wcc::ErrorKind::InvalidArgument;
}

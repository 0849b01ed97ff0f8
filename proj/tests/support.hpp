#pragma once

#include <doctest.h>

#include "k3w/integer.hpp"

// Code of the k3w::Error thrown by fn; fails the test if nothing is thrown.
template <typename Fn>
k3w::Errc error_of(Fn&& fn) {
    try {
        fn();
    } catch (const k3w::Error& e) {
        return e.code();
    }
    FAIL("expected k3w::Error");
    return k3w::Errc::InvalidArgument;
}

#pragma once

#include <stdexcept>
#include <string>

namespace hvq {

// Domain error types. All derive from std::runtime_error so callers that
// do not care about the distinction can catch one base.

struct InvalidParameter : std::runtime_error {
    explicit InvalidParameter(const std::string& what) : std::runtime_error(what) {}
};

// Coincidence curve cannot be normalized: A(0) = 0.
struct ZeroAtOrigin : std::runtime_error {
    explicit ZeroAtOrigin(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : std::runtime_error {
    explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

// State spans both J-blocks where a single block is required.
struct BlockMixture : std::runtime_error {
    explicit BlockMixture(const std::string& what) : std::runtime_error(what) {}
};

// Superposition of wavepackets carrying different trajectory tags.
struct TagMismatch : std::runtime_error {
    explicit TagMismatch(const std::string& what) : std::runtime_error(what) {}
};

// <R>(t) does not change sign in the sampled window.
struct NoCrossing : std::runtime_error {
    explicit NoCrossing(const std::string& what) : std::runtime_error(what) {}
};

struct GridTooSmall : std::runtime_error {
    explicit GridTooSmall(const std::string& what) : std::runtime_error(what) {}
};

struct BandLimitExceeded : std::runtime_error {
    explicit BandLimitExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroAmplitude : std::runtime_error {
    explicit ZeroAmplitude(const std::string& what) : std::runtime_error(what) {}
};

struct NonHermitian : std::runtime_error {
    explicit NonHermitian(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hvq

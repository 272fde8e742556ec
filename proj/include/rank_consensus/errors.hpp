// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace rank_consensus {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file or ranking literal.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A parameter outside its documented range (q, gamma, lambda, eps, k, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// An operation was called with arguments that violate its precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Relative deviations are undefined because an overall score is zero.
class DegenerateConsensusError : public Error {
public:
    using Error::Error;
};

/// A computed result broke one of the library's own invariants.
class InvariantError : public Error {
public:
    using Error::Error;
};

}  // namespace rank_consensus

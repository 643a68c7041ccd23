#pragma once

#include <stdexcept>
#include <string>

namespace packpair {

// Base class for all library errors. Subtypes mirror the failure modes of
// the individual modules so callers can catch narrowly.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DegenerateInput : public Error {
public:
    using Error::Error;
};

class InconsistentKeypoints : public Error {
public:
    using Error::Error;
};

class ShapeMismatch : public Error {
public:
    using Error::Error;
};

class NoVisibleKeypoints : public Error {
public:
    using Error::Error;
};

// Toppling kinematics: the gripper cannot satisfy the chord equation.
class NoSolution : public Error {
public:
    using Error::Error;
};

// A geometrically valid solution exists but violates a feasibility bound.
class Infeasible : public Error {
public:
    using Error::Error;
};

class WrongState : public Error {
public:
    using Error::Error;
};

class AmbiguousCorners : public Error {
public:
    using Error::Error;
};

class NoRotation : public Error {
public:
    using Error::Error;
};

class Unplannable : public Error {
public:
    using Error::Error;
};

class ShoeBoxMismatch : public Error {
public:
    using Error::Error;
};

class NotPlaced : public Error {
public:
    using Error::Error;
};

class InapplicableAction : public Error {
public:
    using Error::Error;
};

// Requested a bottom-state scenario for a shoe whose structure has no
// stable bottom pose (high-heeled and leather catalog entries).
class NoBottomState : public Error {
public:
    using Error::Error;
};

// Scenario / heatmap file problems; carries line and column when known.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line = 0, int column = 0)
        : Error(what), line(line), column(column) {}
    int line;
    int column;
};

}  // namespace packpair

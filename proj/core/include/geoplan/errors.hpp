#pragma once

#include <stdexcept>
#include <string>

namespace geoplan {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The two orbit planes coincide, so there is no node line.
class DegeneratePlanes : public Error {
public:
  using Error::Error;
};

class InvalidRevolutions : public Error {
public:
  using Error::Error;
};

class NoConvergence : public Error {
public:
  using Error::Error;
};

/// Lambert geometry with a transfer angle too close to 180 degrees.
class CollinearGeometry : public Error {
public:
  using Error::Error;
};

class InstanceTooLarge : public Error {
public:
  using Error::Error;
};

/// No insertion position satisfies the deadline and budget constraints.
class AllInfeasible : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

class ValidationError : public Error {
public:
  using Error::Error;
};

} // namespace geoplan

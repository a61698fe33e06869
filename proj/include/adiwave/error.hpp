#pragma once

#include <stdexcept>
#include <string>

namespace adiwave {

// Every failure raised by the library derives from Error.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

class ShapeMismatch : public Error
{
  public:
    using Error::Error;
};

class ZeroPivot : public Error
{
  public:
    using Error::Error;
};

class TooSmallGrid : public Error
{
  public:
    using Error::Error;
};

// A view or matrix too small for the requested trimming.
class TooSmall : public Error
{
  public:
    using Error::Error;
};

// A field developed NaN/Inf or exceeded the divergence limit.
class NonFinite : public Error
{
  public:
    using Error::Error;
};

class NonPositiveError : public Error
{
  public:
    using Error::Error;
};

class TooFewRates : public Error
{
  public:
    using Error::Error;
};

class ConfigError : public Error
{
  public:
    using Error::Error;
};

} // namespace adiwave

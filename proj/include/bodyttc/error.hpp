#pragma once

#include <stdexcept>
#include <string>

namespace bodyttc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GenerationExhausted : public Error {
 public:
  using Error::Error;
};

class PairConstructionFailed : public Error {
 public:
  using Error::Error;
};

/// Exact polygons never touch under the given motion.
class NoCollision : public Error {
 public:
  using Error::Error;
};

class NoCollisionWithinHorizon : public Error {
 public:
  explicit NoCollisionWithinHorizon(int horizon_frames)
      : Error("no overlap within " + std::to_string(horizon_frames) + " frames"),
        horizon_frames_(horizon_frames) {}

  int horizon_frames() const noexcept { return horizon_frames_; }

 private:
  int horizon_frames_;
};

class TooFewObjects : public Error {
 public:
  using Error::Error;
};

class EmptyMask : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

class UnknownVideo : public Error {
 public:
  using Error::Error;
};

class MissingCell : public Error {
 public:
  using Error::Error;
};

class EmptyIntersection : public Error {
 public:
  using Error::Error;
};

class TooFewPoints : public Error {
 public:
  using Error::Error;
};

}  // namespace bodyttc

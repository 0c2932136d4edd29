// Copyright 2026 The cornerem Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cornerem {

enum class ErrorKind {
  InvalidArgument,
  TooFewEdges,
  DegenerateCone,
  NotStrictlyConvex,
  RedundantEdge,
  NoSeparator,
  SOutOfRange,
  TauBelowK,
  ZeroSource,
  DispersionMismatch,
  NonConvergent,
  NoConvergence,
  PointInSupport,
  UnsupportedPotential,
  GridMismatch,
  BelowNoiseFloor,
  TooFewPoints,
  ExtrapolationUnstable,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cornerem

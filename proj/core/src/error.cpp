// Copyright 2026 The cornerem Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cornerem/error.hpp"

#include "cornerem/linalg.hpp"

namespace cornerem {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::TooFewEdges: return "TooFewEdges";
    case ErrorKind::DegenerateCone: return "DegenerateCone";
    case ErrorKind::NotStrictlyConvex: return "NotStrictlyConvex";
    case ErrorKind::RedundantEdge: return "RedundantEdge";
    case ErrorKind::NoSeparator: return "NoSeparator";
    case ErrorKind::SOutOfRange: return "SOutOfRange";
    case ErrorKind::TauBelowK: return "TauBelowK";
    case ErrorKind::ZeroSource: return "ZeroSource";
    case ErrorKind::DispersionMismatch: return "DispersionMismatch";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::PointInSupport: return "PointInSupport";
    case ErrorKind::UnsupportedPotential: return "UnsupportedPotential";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::BelowNoiseFloor: return "BelowNoiseFloor";
    case ErrorKind::TooFewPoints: return "TooFewPoints";
    case ErrorKind::ExtrapolationUnstable: return "ExtrapolationUnstable";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

UnitVector3 UnitVector3::normalize(const Vec3& v) {
  const double n = norm(v);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error(ErrorKind::InvalidArgument, "cannot normalize a zero or non-finite vector");
  }
  return UnitVector3(v / n);
}

UnitVector3 UnitVector3::from_unit(const Vec3& v, double tol) {
  const double n2 = dot(v, v);
  if (!(std::abs(n2 - 1.0) <= tol)) {
    throw Error(ErrorKind::InvalidArgument, "vector is not of unit length");
  }
  return UnitVector3(v);
}

}  // namespace cornerem

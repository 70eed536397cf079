#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wedgebound/geometry.hpp"

namespace wedgebound {

/// A domain together with the label used in reports (file path or @NAME).
struct NamedDomain {
  std::string id;
  Domain domain;
};

/// Parses a JSON domain document:
///
///   {"shape": "disc" | "sector" | "annular_sector" | "polygon",
///    "center": [x, y], "radius": r,                      (disc)
///    "vertex": [x, y], "radius": r, "aperture": a, "bisector": b,   (sector)
///    "center": [x, y], "rho1": r1, "rho2": r2, "aperture": a, "bisector": b,
///    "vertices": [[x, y], ...],                          (polygon)
///    "slits": [[[x, y], [x, y], ...], ...],
///    "pose": {"origin": [x, y], "rotation": r},
///    "name": "free text, ignored"}
///
/// Centres and vertices default to the origin, bisector and pose to zero.
/// Unknown keys are rejected. Errors are ParseError messages of the form
/// "source:line: message", including geometry validation failures.
Domain parse_domain(std::string_view text, std::string_view source = "<input>");

/// Built-in domains: @D0, @D1, @D2-literal, @D2-area4, @cut-disc:r,
/// @sector:beta,r, @annulus:beta,r1,r2. Throws ParseError for unknown names
/// or bad parameters.
Domain builtin_domain(std::string_view name);

std::vector<std::string> builtin_names();

/// "@..." resolves to a built-in, anything else is read as a file.
NamedDomain load_domain(const std::string& path_or_name);

/// Inverse of parse_domain (round-trips exactly for finite doubles).
std::string domain_to_json(const Domain& domain);

}  // namespace wedgebound

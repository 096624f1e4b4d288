#pragma once

#include <string>

#include "stieltjes/piecewise.hpp"

namespace stieltjes {

// JSON wire format:
//   derivator: {"domain":[a,b], "breakpoints":[...],
//               "segments":[{"form":"affine","slope":..,"intercept":..} |
//                           {"form":"constant","level":..} |
//                           {"form":"exp","scale":..,"rate":..,"shift":..} |
//                           {"form":"cantor","depth":n}],
//               "jumps":{"t":delta,...}}
//   function: same shape plus "point_values" and "right_limits" maps; a
//   single cantor segment denotes the step iterate F_depth on [0,1].
Derivator load_derivator(const std::string& path);
Derivator parse_derivator(const std::string& json_text);
std::string derivator_to_json(const Derivator& g);

PiecewiseMap load_piecewise(const std::string& path);
PiecewiseMap parse_piecewise(const std::string& json_text);
std::string piecewise_to_json(const PiecewiseMap& f);

}  // namespace stieltjes

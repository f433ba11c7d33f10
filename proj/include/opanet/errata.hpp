#pragma once

#include <array>
#include <string_view>

namespace opanet {

// A correction this implementation applies to the published formulation it
// models. Each entry records the form as printed, the form implemented, and
// why the printed form cannot be right.
struct Erratum {
  std::string_view topic;
  std::string_view printed;
  std::string_view implemented;
  std::string_view reason;
};

const std::array<Erratum, 4>& errata();

}  // namespace opanet

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "guikit/action.hpp"

namespace guikit {

/// An element the agent may point at, used to resolve predicted boxes to
/// element ids.
struct CandidateElement {
  std::int64_t element_id = 0;
  Box box;
  std::optional<std::string> text;

  friend bool operator==(const CandidateElement&,
                         const CandidateElement&) = default;
};

struct Step {
  std::string screenshot;
  Viewport viewport;
  std::vector<CandidateElement> candidates;
  /// Golden actions, in execution order.
  std::vector<Action> actions;

  friend bool operator==(const Step&, const Step&) = default;
};

struct Episode {
  std::string episode_id;
  std::string instruction;
  std::string source;
  /// Position space of every piece of geometry in the episode.
  PositionSpace space = PositionSpace::relative_unit;
  std::vector<Step> steps;
  std::map<std::string, std::string> metadata;

  friend bool operator==(const Episode&, const Episode&) = default;
};

struct Diagnostic {
  std::size_t step_index = 0;
  std::optional<std::size_t> action_index;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

std::string to_string(const Diagnostic& d);

/// Checks action payloads, geometry bounds for the declared space (absolute
/// geometry must also lie inside the step viewport) and element id
/// references. Returns an empty list for a well-formed episode.
std::vector<Diagnostic> validate_episode(const Episode& episode);

}  // namespace guikit

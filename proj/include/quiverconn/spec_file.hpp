#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "quiverconn/connection_spec.hpp"

namespace qc {

/// A parsed specification: exactly one of the connection and quiver forms.
struct SpecFile {
  std::string name;
  std::optional<ConnectionSpec> connection;
  std::optional<QuiverSpec> quiver;

  QuiverData quiver_data() const;
};

/// Throws ParseError (syntax, with line and column) or InvalidInput (content).
SpecFile parse_spec(std::string_view text);
SpecFile load_spec(const std::string& path);

}  // namespace qc

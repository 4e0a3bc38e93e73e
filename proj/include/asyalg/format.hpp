#pragma once

#include "system.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace asyalg
{

/// Text form of one signal:
///   init=<bits> (<t>:<bits>)* (tail@<s>+<p>: (<o>:<bits>)+)?
/// `line` and `column` locate `text` in a larger document for error reports.
/// A non-zero `dimension` is enforced.
signal parse_signal( std::string_view text, unsigned dimension = 0, std::size_t line = 1, std::size_t column = 1 );

struct system_document
{
  system sys;
  std::optional<std::string> name;
  /// Semantic duplicates that were merged, one message per occurrence.
  std::vector<std::string> warnings;
};

/// Parses
///   system m=<int> n=<int> [name=<ident>]
///   input <signal>
///     state <signal>
///   ...
/// Blank lines and lines starting with `#` are ignored. Throws `parse_error`
/// with the line and column of the offending token.
system_document parse_system( std::string_view text );

/// Canonical text: entries in the order of canonical signals, rationals in
/// lowest terms. Semantically equal systems give identical bytes.
std::string serialize_system( const system& f, const std::optional<std::string>& name = std::nullopt );

/// A finite set of signals:
///   signals n=<int>
///   signal <signal>
///   ...
signal_set parse_signal_set( std::string_view text );
std::string serialize_signal_set( const signal_set& s );

} // namespace asyalg

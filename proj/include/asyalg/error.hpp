#pragma once

#include <stdexcept>
#include <string>

namespace asyalg
{

enum class errc
{
  dimension_mismatch,
  invalid_signal,
  incompatible_systems,
  empty_domain,
  state_outside_domain,
  not_an_initial_state,
  not_absolutely_stable,
  universe_too_small,
  input_not_shared,
  unknown_theorem,
  invalid_system,
  arithmetic_overflow,
  parse_error,
};

const char* to_string( errc code );

/// Every failure raised by the library. `code()` lets callers branch on the
/// algebraic outcome (e.g. an undefined intersection) without parsing text.
class algebra_error : public std::runtime_error
{
public:
  algebra_error( errc code, const std::string& what )
      : std::runtime_error( what ), _code( code )
  {
  }

  [[nodiscard]] errc code() const noexcept { return _code; }

  /// True for the errors that mean "the operation is undefined on these
  /// operands" as opposed to malformed input.
  [[nodiscard]] bool undefined_operation() const noexcept;

private:
  errc _code;
};

class parse_error : public algebra_error
{
public:
  parse_error( std::size_t line, std::size_t column, const std::string& message );

  [[nodiscard]] std::size_t line() const noexcept { return _line; }
  [[nodiscard]] std::size_t column() const noexcept { return _column; }

private:
  std::size_t _line;
  std::size_t _column;
};

} // namespace asyalg

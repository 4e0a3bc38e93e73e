#include <asyalg/error.hpp>

namespace asyalg
{

const char* to_string( errc code )
{
  switch ( code )
  {
  case errc::dimension_mismatch: return "DimensionMismatch";
  case errc::invalid_signal: return "InvalidSignal";
  case errc::incompatible_systems: return "IncompatibleSystems";
  case errc::empty_domain: return "EmptyDomain";
  case errc::state_outside_domain: return "StateOutsideDomain";
  case errc::not_an_initial_state: return "NotAnInitialState";
  case errc::not_absolutely_stable: return "NotAbsolutelyStable";
  case errc::universe_too_small: return "UniverseTooSmall";
  case errc::input_not_shared: return "InputNotShared";
  case errc::unknown_theorem: return "UnknownTheoremId";
  case errc::invalid_system: return "InvalidSystem";
  case errc::arithmetic_overflow: return "ArithmeticOverflow";
  case errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

bool algebra_error::undefined_operation() const noexcept
{
  switch ( _code )
  {
  case errc::incompatible_systems:
  case errc::empty_domain:
  case errc::state_outside_domain:
  case errc::not_an_initial_state:
  case errc::not_absolutely_stable:
  case errc::universe_too_small:
  case errc::input_not_shared:
    return true;
  default:
    return false;
  }
}

parse_error::parse_error( std::size_t line, std::size_t column, const std::string& message )
    : algebra_error( errc::parse_error,
                     "line " + std::to_string( line ) + ", column " + std::to_string( column ) + ": " + message ),
      _line( line ), _column( column )
{
}

} // namespace asyalg

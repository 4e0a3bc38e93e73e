#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace asyalg::cli
{

/// Exit codes of every command.
enum exit_code : int
{
  success = 0,
  property_fails = 1, ///< also the verdict Bad
  usage_error = 2,    ///< usage, I/O or parse error
  undefined = 3,      ///< the operation is undefined on its operands
};

/// Runs one command line (without the program name). Output files named by
/// `-o` are written directly; everything else goes to `out` and `err`.
int run( const std::vector<std::string>& args, std::ostream& out, std::ostream& err );

} // namespace asyalg::cli

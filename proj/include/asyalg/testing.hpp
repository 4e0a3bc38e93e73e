#pragma once

#include "system.hpp"

#include <string>

namespace asyalg
{

enum class verdict
{
  good,          ///< x in f(u) \ g(u)
  bad,           ///< x in g(u) \ f(u)
  ambiguous,     ///< x in f(u) cap g(u)
  foreign_state, ///< x outside (f cup g)(u)
};

const char* to_string( verdict v );

/// All u in U cap V with f(u) cap g(u) empty: a single measurement of the
/// state under such an input tells the good model f from the faulty g.
signal_set find_distinguishing_inputs( const system& f, const system& g );

/// Throws `input_not_shared` unless u is an input of both systems.
verdict classify_state( const system& f, const system& g, const signal& u, const signal& x );

} // namespace asyalg

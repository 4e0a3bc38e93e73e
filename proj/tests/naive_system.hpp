#pragma once

// List-based reference implementations of the system operators, written
// straight from the set-builder definitions with linear scans. Used to
// cross-check the map-based library operators.

#include <asyalg/system.hpp>

#include <algorithm>
#include <optional>
#include <vector>

namespace oracle
{

using asyalg::signal;

struct naive_system
{
  unsigned m = 1, n = 1;
  std::vector<std::pair<signal, std::vector<signal>>> entries;

  const std::vector<signal>* find( const signal& u ) const
  {
    for ( const auto& e : entries )
      if ( e.first == u )
        return &e.second;
    return nullptr;
  }

  asyalg::system build() const { return asyalg::system::from_entries( m, n, entries ); }
};

inline naive_system naive_of( const asyalg::system& f )
{
  naive_system out{ f.input_dim(), f.state_dim(), {} };
  for ( const auto& [u, xs] : f )
    out.entries.emplace_back( u, std::vector<signal>( xs.begin(), xs.end() ) );
  return out;
}

inline bool has( const std::vector<signal>& v, const signal& x ) { return std::find( v.begin(), v.end(), x ) != v.end(); }

inline void add_unique( std::vector<signal>& v, const signal& x )
{
  if ( !has( v, x ) )
    v.push_back( x );
}

/// nullopt when W is empty.
inline std::optional<naive_system> naive_intersect( const naive_system& f, const naive_system& g )
{
  naive_system out{ f.m, f.n, {} };
  for ( const auto& [u, fu] : f.entries )
  {
    const auto* gu = g.find( u );
    if ( !gu )
      continue;
    std::vector<signal> common;
    for ( const auto& x : fu )
      if ( has( *gu, x ) )
        common.push_back( x );
    if ( !common.empty() )
      out.entries.emplace_back( u, common );
  }
  if ( out.entries.empty() )
    return std::nullopt;
  return out;
}

inline naive_system naive_unite( const naive_system& f, const naive_system& g )
{
  naive_system out{ f.m, f.n, {} };
  for ( const auto& [u, fu] : f.entries )
  {
    const auto* gu = g.find( u );
    if ( !gu )
      out.entries.emplace_back( u, fu ); // U \ V
    else
    {
      auto both = fu; // U cap V
      for ( const auto& x : *gu )
        add_unique( both, x );
      out.entries.emplace_back( u, both );
    }
  }
  for ( const auto& [u, gu] : g.entries )
    if ( !f.find( u ) )
      out.entries.emplace_back( u, gu ); // V \ U
  return out;
}

inline naive_system naive_inverse( const naive_system& f )
{
  naive_system out{ f.n, f.m, {} };
  std::vector<signal> xs;
  for ( const auto& e : f.entries )
    for ( const auto& x : e.second )
      add_unique( xs, x );
  for ( const auto& x : xs )
  {
    std::vector<signal> us;
    for ( const auto& [u, fu] : f.entries )
      if ( has( fu, x ) )
        us.push_back( u );
    out.entries.emplace_back( x, us );
  }
  return out;
}

inline naive_system naive_dual( const naive_system& f )
{
  naive_system out{ f.m, f.n, {} };
  for ( const auto& [u, fu] : f.entries )
  {
    std::vector<signal> xs;
    for ( const auto& x : fu )
      xs.push_back( asyalg::complement( x ) );
    out.entries.emplace_back( asyalg::complement( u ), xs );
  }
  return out;
}

/// Generalized serial connection h o f (strict mode is the special case
/// where every state of f is an input of h).
inline std::optional<naive_system> naive_serial( const naive_system& h, const naive_system& f )
{
  naive_system out{ f.m, h.n, {} };
  for ( const auto& [u, fu] : f.entries )
  {
    std::vector<signal> image;
    for ( const auto& x : fu )
      if ( const auto* hx = h.find( x ) )
        for ( const auto& y : *hx )
          add_unique( image, y );
    if ( !image.empty() )
      out.entries.emplace_back( u, image );
  }
  if ( out.entries.empty() )
    return std::nullopt;
  return out;
}

} // namespace oracle

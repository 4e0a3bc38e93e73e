#pragma once

#include "signal.hpp"

#include <functional>
#include <initializer_list>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace asyalg
{

/// Finite set of signals of one dimension. Membership is equality of
/// functions of time (signals are canonical, so this is `==`), and iteration
/// follows the total order on canonical forms.
class signal_set
{
public:
  using container = std::set<signal>;
  using const_iterator = container::const_iterator;

  explicit signal_set( unsigned dimension );
  signal_set( unsigned dimension, std::initializer_list<signal> members );

  [[nodiscard]] unsigned dimension() const noexcept { return _dim; }
  [[nodiscard]] std::size_t size() const noexcept { return _members.size(); }
  [[nodiscard]] bool empty() const noexcept { return _members.empty(); }
  [[nodiscard]] bool contains( const signal& x ) const { return _members.count( x ) != 0; }

  /// Returns false when `x` was already a member.
  bool insert( signal x );
  bool erase( const signal& x ) { return _members.erase( x ) != 0; }

  [[nodiscard]] const_iterator begin() const noexcept { return _members.begin(); }
  [[nodiscard]] const_iterator end() const noexcept { return _members.end(); }

  friend bool operator==( const signal_set&, const signal_set& ) = default;
  friend auto operator<=>( const signal_set&, const signal_set& ) = default;

private:
  unsigned _dim;
  container _members;
};

signal_set set_intersection( const signal_set& a, const signal_set& b );
signal_set set_union( const signal_set& a, const signal_set& b );
signal_set set_difference( const signal_set& a, const signal_set& b );
bool is_subset( const signal_set& a, const signal_set& b );
bool intersects( const signal_set& a, const signal_set& b );

/// An asynchronous system f : U -> P*(S^(n)) with U a finite, non-empty set
/// of m-signals. Every value set is non-empty; construction enforces it.
class system
{
public:
  using map_type = std::map<signal, signal_set>;
  using const_iterator = map_type::const_iterator;

  /// Throws `algebra_error(errc::invalid_system)` for an empty domain or an
  /// empty value set and `dimension_mismatch` for wrongly sized signals.
  system( unsigned input_dim, unsigned state_dim, map_type entries );

  static system from_entries( unsigned input_dim, unsigned state_dim,
                              const std::vector<std::pair<signal, std::vector<signal>>>& entries );

  [[nodiscard]] unsigned input_dim() const noexcept { return _m; }
  [[nodiscard]] unsigned state_dim() const noexcept { return _n; }
  [[nodiscard]] std::size_t size() const noexcept { return _map.size(); }

  [[nodiscard]] const map_type& entries() const noexcept { return _map; }
  [[nodiscard]] const_iterator begin() const noexcept { return _map.begin(); }
  [[nodiscard]] const_iterator end() const noexcept { return _map.end(); }

  [[nodiscard]] bool contains( const signal& u ) const { return _map.count( u ) != 0; }

  /// f(u), or nullptr when u is not an admissible input.
  [[nodiscard]] const signal_set* find( const signal& u ) const;
  [[nodiscard]] const signal_set& at( const signal& u ) const;

  [[nodiscard]] signal_set domain() const;

  friend bool operator==( const system&, const system& ) = default;

private:
  unsigned _m;
  unsigned _n;
  map_type _map;
};

/// f intersect g on W = {u in U cap V | f(u) cap g(u) non-empty}.
/// Throws `incompatible_systems` when W is empty.
system intersect( const system& f, const system& g );

struct union_result
{
  system result;
  bool disjoint; ///< U cap V is empty
};

union_result unite_reporting( const system& f, const system& g );
system unite( const system& f, const system& g );

/// U subset V and f(u) subset g(u) for all u in U.
bool is_subsystem( const system& f, const system& g );

struct state_function
{
  std::map<signal, std::set<bvec>> per_input;
  std::set<bvec> values; ///< union over all inputs
};

/// phi_0 and Theta_0.
state_function initial_state_function( const system& f );

/// phi_f and Theta_f; throws `not_absolutely_stable` if some state keeps
/// switching forever.
state_function final_state_function( const system& f );

/// The subsystem of states whose initial value is `mu`; throws
/// `not_an_initial_state` if no state starts at `mu`.
system restrict_to_initial( const system& f, const bvec& mu );

/// f*(u) = { complement(x) | x in f(complement(u)) }.
system dual( const system& f );

/// f^-1(x) = { u | x in f(u) } on X = union of all f(u).
system inverse( const system& f );

system cartesian( const system& f, const system& g );

/// (f, g)(u) = (f x g)(u x u) on U cap V; throws `empty_domain` if the domains
/// are disjoint.
system parallel( const system& f, const system& g );

enum class serial_mode
{
  /// Requires every state of f to be an input of h.
  strict,
  /// Keeps only the inputs u with f(u) cap X non-empty.
  generalized,
};

/// The cascade h o f.
system serial( const system& h, const system& f, serial_mode mode = serial_mode::strict );

using state_filter = std::function<bool( const signal& )>;

/// f cap X for an intensional X given as a membership test. Throws
/// `incompatible_systems` if no state satisfies it.
system intersect_with_predicate( const system& f, const state_filter& member );

/// f cup X for the autonomous system u -> X, truncated to the finite
/// `universe` of inputs (which must contain U).
system unite_with_constant( const system& f, const signal_set& x, const signal_set& universe );

/// The union of all value sets.
signal_set state_union( const system& f );

} // namespace asyalg

#pragma once

#include "system.hpp"

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace asyalg
{

namespace pred
{

/// x(-inf+0) = 0.
struct null_initial
{
  friend bool operator==( const null_initial&, const null_initial& ) = default;
};

/// Every coordinate is monotone w.r.t. 0 < 1 or 1 < 0: it switches at most once.
struct monotone
{
  friend bool operator==( const monotone&, const monotone& ) = default;
};

/// x_1(t) | ... | x_n(t) = 1 for all t.
struct at_least_one_high
{
  friend bool operator==( const at_least_one_high&, const at_least_one_high& ) = default;
};

/// Exactly one coordinate changes at every switch instant.
struct single_coordinate_switch
{
  friend bool operator==( const single_coordinate_switch&, const single_coordinate_switch& ) = default;
};

/// Coordinate `coordinate` (1-based) is constantly `value`.
struct stuck_at
{
  unsigned coordinate;
  bool value;
  friend bool operator==( const stuck_at&, const stuck_at& ) = default;
};

/// After a rise a coordinate stays 1 on [t, t+rise]; after a fall it stays 0
/// on [t, t+fall].
struct absolute_inertia
{
  rational rise;
  rational fall;
  friend bool operator==( const absolute_inertia&, const absolute_inertia& ) = default;
};

} // namespace pred

struct state_predicate
{
  using kind_type = std::variant<pred::null_initial, pred::monotone, pred::at_least_one_high,
                                 pred::single_coordinate_switch, pred::stuck_at, pred::absolute_inertia>;

  unsigned dimension;
  kind_type kind;

  /// Validates coordinate ranges and positive delays.
  state_predicate( unsigned dimension, kind_type kind );

  /// CLI names: `null-initial`, `monotone`, `at-least-one-high`,
  /// `single-switch`, `stuck-at:<i>:<v>`, `inertia:<dr>:<df>`.
  static state_predicate parse( std::string_view text, unsigned dimension );
  [[nodiscard]] std::string to_string() const;

  friend bool operator==( const state_predicate&, const state_predicate& ) = default;
};

bool predicate_holds( const state_predicate& p, const signal& x );

/// A total Boolean function B^m -> B^n given by its truth table. Entry `k`
/// is the output for the input whose bit pattern is `k` (coordinate i+1 is
/// bit i).
class bool_fn
{
public:
  bool_fn( unsigned input_dim, unsigned output_dim, std::vector<bvec> table );

  static bool_fn identity( unsigned dim );

  /// One line per input pattern, `<m-bits> -> <n-bits>`, all 2^m required.
  static bool_fn parse( std::string_view text );

  [[nodiscard]] unsigned input_dim() const noexcept { return _m; }
  [[nodiscard]] unsigned output_dim() const noexcept { return _n; }
  [[nodiscard]] const bvec& operator()( const bvec& input ) const;

private:
  unsigned _m;
  unsigned _n;
  std::vector<bvec> _table;
};

/// t -> F(u(t)).
signal compose_boolean( const bool_fn& f, const signal& u );

/// x in g(u) for the inertial model g built from F: every rise of x_i at t
/// needs F_i(u) = 1 on [t - rise, t), every fall needs F_i(u) = 0 on
/// [t - fall, t).
bool inertial_membership( const bool_fn& f, const rational& rise, const rational& fall, const signal& u,
                          const signal& x );

/// f cap X with X the set of signals satisfying `p`.
system intersect_with_predicate( const system& f, const state_predicate& p );

/// f cap g for the inertial model g: keeps x in f(u) with x in g(u).
system intersect_inertial( const system& f, const bool_fn& fn, const rational& rise, const rational& fall );

} // namespace asyalg

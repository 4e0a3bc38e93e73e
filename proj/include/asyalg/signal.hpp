#pragma once

#include "bvec.hpp"
#include "rational.hpp"

#include <compare>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace asyalg
{

struct event
{
  rational time;
  bvec value;

  friend bool operator==( const event&, const event& ) = default;
  friend auto operator<=>( const event&, const event& ) = default;
};

/// Periodic continuation of a signal: for every k >= 0 and every pattern entry
/// (o, v) the signal takes value v at start + k*period + o. Pattern offsets are
/// strictly increasing in [0, period).
struct periodic_tail
{
  rational start;
  rational period;
  std::vector<event> pattern;

  friend bool operator==( const periodic_tail&, const periodic_tail& ) = default;
  friend auto operator<=>( const periodic_tail&, const periodic_tail& ) = default;
};

/// A piecewise-constant function from time to B^n with left-closed steps:
/// the value switches to `e.value` at `e.time` and holds on [e.time, next).
///
/// Only finitely describable signals are representable: a finite list of
/// transient switches, optionally followed by a periodic tail. Instances are
/// always in canonical form, so `==` is equality as functions of time:
///  - every stored event is a real switch (the value differs from the one
///    just before it), in every period of the tail;
///  - the tail period is minimal;
///  - the tail starts at the earliest switch from which the signal repeats.
class signal
{
public:
  /// The constant signal with value `value` everywhere.
  explicit signal( bvec value );

  [[nodiscard]] unsigned dimension() const noexcept { return _initial.dimension(); }
  [[nodiscard]] const bvec& initial() const noexcept { return _initial; }
  [[nodiscard]] const std::vector<event>& transient() const noexcept { return _transient; }
  [[nodiscard]] const std::optional<periodic_tail>& tail() const noexcept { return _tail; }

  /// True when the signal has a final value (finitely many switches).
  [[nodiscard]] bool has_final_value() const noexcept { return !_tail.has_value(); }
  [[nodiscard]] bool is_constant() const noexcept { return _transient.empty() && !_tail; }

  /// Earliest switch instant; nullopt for constant signals.
  [[nodiscard]] std::optional<rational> first_switch() const;

  /// Latest switch instant of a tail-free signal; nullopt if constant or if
  /// the signal keeps switching forever.
  [[nodiscard]] std::optional<rational> last_switch() const;

  /// Every switch instant in the closed interval [from, to], ascending.
  [[nodiscard]] std::vector<rational> switch_instants( const rational& from, const rational& to ) const;

  /// The instant after which the signal is either constant or purely
  /// periodic: the tail start, else the last switch; nullopt if constant.
  [[nodiscard]] std::optional<rational> settle_time() const;

  friend bool operator==( const signal&, const signal& ) = default;
  friend auto operator<=>( const signal&, const signal& ) = default;

  /// Text form `init=<bits> [t:<bits> ...] [tail@s+p: o:<bits> ...]`.
  [[nodiscard]] std::string to_string() const;

private:
  signal() = default;

  friend signal make_signal( unsigned dimension, bvec initial, std::vector<event> transient,
                             std::optional<periodic_tail> tail );

  bvec _initial;
  std::vector<event> _transient;
  std::optional<periodic_tail> _tail;
};

/// Builds the canonical signal described by the arguments.
///
/// Throws `algebra_error` with `dimension_mismatch` when a value has the wrong
/// dimension and `invalid_signal` when event times are not strictly
/// increasing, a pattern offset lies outside [0, period), the period is not
/// positive, or the tail starts at or before the last transient event.
signal make_signal( unsigned dimension, bvec initial, std::vector<event> transient = {},
                    std::optional<periodic_tail> tail = std::nullopt );

bvec value_at( const signal& x, const rational& t );

/// x(t - 0): the value on a small interval just before t.
bvec left_limit( const signal& x, const rational& t );

inline const bvec& initial_value( const signal& x ) { return x.initial(); }

/// The value after the last switch, or nullopt when the signal has a
/// periodic tail.
std::optional<bvec> final_value( const signal& x );

signal complement( const signal& x );

/// Coordinate-wise concatenation (u x u')(t) = (u(t), u'(t)).
signal product( const signal& x, const signal& y );

inline bool signals_equal( const signal& x, const signal& y ) { return x == y; }

/// The signal t -> fn(x_1(t), ..., x_k(t)) of dimension `dimension`. The
/// result switches only where some argument switches; tails combine over the
/// least common period.
signal pointwise( std::span<const signal> args, unsigned dimension,
                  const std::function<bvec( std::span<const bvec> )>& fn );

} // namespace asyalg

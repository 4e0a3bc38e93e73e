#pragma once

#include "system.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace asyalg
{

struct gen_params
{
  std::uint64_t seed = 1;
  unsigned m_min = 1, m_max = 3;
  unsigned n_min = 1, n_max = 3;
  unsigned inputs_min = 1, inputs_max = 4;
  unsigned states_min = 1, states_max = 4;
  unsigned switches_min = 0, switches_max = 5;
  /// Transient switches fall on multiples of 1/4 in [time_min, time_max].
  rational time_min = -4;
  rational time_max = 8;
  double tail_probability = 0.25;
  /// Probability that a drawn input or state comes from the shared pool
  /// rather than being fresh, so that paired systems overlap.
  double overlap_bias = 0.8;

  /// Throws std::invalid_argument for empty or out-of-range ranges.
  void validate() const;
};

/// Deterministic source of random signals and systems. Signals are drawn
/// from per-dimension pools at the overlap-bias rate, so consecutive
/// systems from one generator share inputs and states.
class system_generator
{
public:
  explicit system_generator( const gen_params& params );
  system_generator( const gen_params& params, std::uint64_t seed );

  [[nodiscard]] const gen_params& params() const noexcept { return _params; }
  std::mt19937_64& rng() noexcept { return _rng; }

  unsigned pick( unsigned lo, unsigned hi );
  bool coin( double p );

  unsigned input_dim() { return pick( _params.m_min, _params.m_max ); }
  unsigned state_dim() { return pick( _params.n_min, _params.n_max ); }

  /// A fresh signal, independent of the pools.
  signal random_signal( unsigned dimension );

  /// A pool member with probability `overlap_bias`, else a fresh signal.
  signal input_signal( unsigned dimension );
  signal state_signal( unsigned dimension );

  system random_system( unsigned m, unsigned n );

  /// A system on `domain` whose states are pooled; every input gets between
  /// states_min and states_max states.
  system system_on( const signal_set& domain, unsigned n );

private:
  signal pooled( std::map<unsigned, std::vector<signal>>& pools, unsigned size, unsigned dimension );

  gen_params _params;
  std::mt19937_64 _rng;
  std::map<unsigned, std::vector<signal>> _input_pool;
  std::map<unsigned, std::vector<signal>> _state_pool;
};

/// One signal of dimension n_min..n_max drawn with `params.seed`.
signal random_signal( const gen_params& params );

/// One system with dimensions drawn from the ranges, using `params.seed`.
system random_system( const gen_params& params );

struct theorem_failure
{
  std::uint64_t seed; ///< per-trial seed (0 for explicit operands)
  std::vector<std::string> operands;
  std::string lhs;
  std::string rhs;
  std::string message;
};

struct theorem_report
{
  std::string id;
  std::size_t trials = 0;
  std::size_t non_vacuous = 0;
  std::size_t vacuous = 0;
  std::size_t failure_count = 0;
  /// The first few failures in full.
  std::vector<theorem_failure> failures;
  /// ser-isect-left: trials where both sides had the same domain.
  std::size_t equal_domains = 0;
  /// Fewer than one non-vacuous trial per hundred.
  bool under_powered = false;

  [[nodiscard]] bool passed() const noexcept { return failure_count == 0 && !under_powered; }
};

struct theorem_info
{
  std::string_view id;
  std::string_view statement;
  /// Number of systems the identity takes when operands are explicit.
  std::size_t arity;
  /// The right side may be strictly larger than the left.
  bool inclusion;
};

/// Every registered identity, in a fixed order.
const std::vector<theorem_info>& theorem_registry();

/// Checks identity `id`. With explicit `operands` a single trial runs on
/// them as given; otherwise `trials` operand tuples are generated from
/// `params`, steered towards the identity's hypotheses. Trials whose
/// hypotheses fail are counted as vacuous. Throws `unknown_theorem`.
theorem_report verify_identity( std::string_view id, const std::vector<system>& operands, std::size_t trials,
                                const gen_params& params );

} // namespace asyalg

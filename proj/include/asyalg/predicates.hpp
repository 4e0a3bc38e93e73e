#pragma once

#include "system.hpp"

#include <map>
#include <optional>
#include <vector>

namespace asyalg
{

/// A violating (input, state) pair, optionally with the second pair it
/// conflicts with (two states of one input, or states of two inputs).
struct regime_counterexample
{
  signal input;
  signal state;
  std::optional<signal> other_input;
  std::optional<signal> other_state;
};

/// Outcome of one regime check. Which witness fields are filled depends on
/// the level:
///  - state regimes 2/5 fill `state_per_input`, 3/6 fill `state`;
///  - time regimes 2/5 fill `time_per_input`, 3/6 fill `time`.
/// A time witness of nullopt means every instant works: all states are
/// constant (initial time) or no state has a final value (final time).
struct regime_report
{
  int level = 1;
  bool holds = true;
  std::map<signal, bvec> state_per_input;
  std::optional<bvec> state;
  std::map<signal, std::optional<rational>> time_per_input;
  std::optional<rational> time;
  /// Final-time checks: inputs with no tail-free state.
  std::vector<signal> vacuous_inputs;
  std::optional<regime_counterexample> counterexample;
};

/// isfs1-isfs3: level 1 always holds; 2 asks for one initial value per
/// input, 3 for one initial value overall.
regime_report check_initial_states( const system& f, int level );

/// isfs4-isfs6: level 4 asks every state to have a final value; 5 one final
/// value per input; 6 one final value overall.
regime_report check_final_states( const system& f, int level );

/// itft1-itft3. Always hold for finite systems; the witness is the largest
/// valid t0, i.e. the earliest first switch (per input or overall).
regime_report check_initial_time( const system& f, int level );

/// itft4-itft6 over the tail-free states only. Always hold; the witness is
/// the smallest valid t_f, the latest last switch. Since signals are steps,
/// `t >= t_f` and `t > t_f` admit the same minimal witness.
regime_report check_final_time( const system& f, int level );

} // namespace asyalg

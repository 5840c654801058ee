#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pinvq/adversary.hpp"

namespace pinvq {

/// A deterministic register machine: load(n) fills the registers, step()
/// advances one instruction, accepting() inspects the registers after a step.
///
/// The halting construction this feeds needs a recursively enumerable set B
/// that is not recursive. No such set can be exercised by a finite test suite,
/// so the machine is pluggable and the bundled ones are ordinary decidable
/// machines; what they demonstrate is the mechanics of r_{n,j} and z_n.
struct RegisterMachine {
  std::string name;
  std::function<std::vector<Int>(std::size_t n)> load;
  std::function<void(std::vector<Int>& registers)> step;
  std::function<bool(const std::vector<Int>& registers)> accepting;
};

/// Registers (x, flag): a step sets the flag when x = 1 and otherwise applies
/// x ↦ x/2 or x ↦ 3x + increment. With increment = 1 this accepts every n ≥ 1
/// that reaches 1 (all tested n do) and never accepts n = 0. With
/// increment = -1 the cycles through 5 and 17 are never accepted.
RegisterMachine collatz_machine(int increment = 1);

/// Accepts even n after one step and never accepts odd n.
RegisterMachine even_machine();

/// Least s in 1..max_steps after which the machine accepts n.
std::optional<std::size_t> acceptance_step(const RegisterMachine& machine, std::size_t n,
                                           std::size_t max_steps);

/// r_{n,j}: q_n if the machine accepts n within j steps (q_n its least
/// accepting step count), otherwise j. In particular r_{n,0} = 0.
Rat tm_gadget(const RegisterMachine& machine, std::size_t n, std::size_t j);

using FamilySequence = std::function<EpsFamilyPoint(std::size_t k)>;

/// k ↦ A_{2^{-k}} at the given dimensions; converges to A_0 with
/// ‖A_{2^{-k}} − A_0‖_F = 2^{-k}.
FamilySequence dyadic_family(std::size_t m = 2, std::size_t n = 2);

/// family(r_{n,j}).A
QMatrix z_sequence_approx(const RegisterMachine& machine, const FamilySequence& family,
                          std::size_t n, std::size_t j);

}  // namespace pinvq

#include "pinvq/gadget.hpp"

namespace pinvq {

RegisterMachine collatz_machine(int increment) {
  return {
      increment == 1 ? "collatz" : "collatz" + std::string(increment < 0 ? "" : "+") +
                                       std::to_string(increment),
      [](std::size_t n) { return std::vector<Int>{Int(static_cast<unsigned long>(n)), Int(0)}; },
      [increment](std::vector<Int>& r) {
        Int& x = r[0];
        if (x == 1) {
          r[1] = 1;
        } else if (mpz_even_p(x.get_mpz_t()) != 0) {
          x /= 2;
        } else {
          x = 3 * x + increment;
        }
      },
      [](const std::vector<Int>& r) { return r[1] != 0; },
  };
}

RegisterMachine even_machine() {
  return {
      "even",
      [](std::size_t n) { return std::vector<Int>{Int(static_cast<unsigned long>(n)), Int(0)}; },
      [](std::vector<Int>& r) {
        if (mpz_even_p(r[0].get_mpz_t()) != 0) r[1] = 1;
      },
      [](const std::vector<Int>& r) { return r[1] != 0; },
  };
}

std::optional<std::size_t> acceptance_step(const RegisterMachine& machine, std::size_t n,
                                           std::size_t max_steps) {
  std::vector<Int> registers = machine.load(n);
  for (std::size_t s = 1; s <= max_steps; ++s) {
    machine.step(registers);
    if (machine.accepting(registers)) return s;
  }
  return std::nullopt;
}

Rat tm_gadget(const RegisterMachine& machine, std::size_t n, std::size_t j) {
  const auto q = acceptance_step(machine, n, j);
  return Rat(static_cast<unsigned long>(q ? *q : j));
}

FamilySequence dyadic_family(std::size_t m, std::size_t n) {
  return [m, n](std::size_t k) { return make_family_point(m, n, pow2(-static_cast<long>(k))); };
}

QMatrix z_sequence_approx(const RegisterMachine& machine, const FamilySequence& family,
                          std::size_t n, std::size_t j) {
  const Rat r = tm_gadget(machine, n, j);
  return family(static_cast<std::size_t>(r.get_num().get_ui())).a;
}

}  // namespace pinvq

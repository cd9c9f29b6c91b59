#pragma once

#include "vlac/ff/poly.hpp"

namespace vlac::ff {

/// Monic minimal generator H of seq: sum_k H_k * seq[i+k] == 0 for every
/// window that fits. The all-zero sequence yields H = 1.
Poly berlekamp_massey(const PrimeField& F, const Vec& seq);

/// True when every full window of seq satisfies the recurrence given by H.
bool generates(const PrimeField& F, const Poly& H, const Vec& seq);

/// Numerator h with deg h < deg H and h/H = sum_i seq[i] * x^(-i-1) as a
/// formal series. Throws Error{GeneratorMismatch} if H does not generate
/// seq, Error{InvalidArgument} if seq is shorter than deg H.
Poly numerator_from_sequence(const PrimeField& F, const Poly& H, const Vec& seq);

}  // namespace vlac::ff

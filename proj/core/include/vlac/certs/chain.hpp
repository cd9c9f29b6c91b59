#pragma once

#include <vector>

#include "vlac/certs/freivalds.hpp"

namespace vlac::certs {

/// Operand of a chain step: an input matrix or an earlier step's product.
struct ChainOperand {
  enum class Kind { Input, Product } kind = Kind::Input;
  std::size_t index = 0;

  static ChainOperand input(std::size_t i) { return {Kind::Input, i}; }
  static ChainOperand product(std::size_t i) { return {Kind::Product, i}; }
};

struct ChainStep {
  ChainOperand lhs;
  ChainOperand rhs;
};

/// A computation reduced to matrix products: step i computes P_i = lhs * rhs,
/// where operands may only refer to inputs or to P_j with j < i.
struct ChainProgram {
  std::vector<la::AnyMatrix> inputs;
  std::vector<ChainStep> steps;
};

/// Throws Error{BrokenReference} on an out-of-range or forward reference,
/// Error{DimensionMismatch} on incompatible shapes.
void validate_chain(const ChainProgram& program);

/// Every intermediate product, in step order.
std::vector<la::DenseMatrix> chain_prove(const ChainProgram& program);

inline constexpr std::string_view kChainId = "chain";

proto::Digest chain_digest(const ChainProgram& program, const SampleSet& S, const FreivaldsOptions& opts);

/// Prover commits all products, then each step is Freivalds-checked with
/// its own challenge; the error is the sum over steps.
ProtocolRun chain_protocol(const ChainProgram& program, const SampleSet& S, const FreivaldsOptions& opts,
                           const std::shared_ptr<std::optional<std::vector<la::DenseMatrix>>>& result = nullptr);

/// Verifier for the chain protocol against any prover.
proto::VerifierFn chain_verifier(ChainProgram program, SampleSet S, FreivaldsOptions opts,
                                 std::shared_ptr<std::optional<std::vector<la::DenseMatrix>>> result = nullptr);
/// Prover that commits the given products and plays along.
proto::ProverFn chain_prover_committing(std::vector<la::DenseMatrix> products, SampleSet S, FreivaldsOptions opts);

/// Offline check of recorded products against the program.
Verdict chain_verify(const ChainProgram& program, const std::vector<la::DenseMatrix>& products,
                     proto::ChallengeSource& src, const SampleSet& S, const FreivaldsOptions& opts = {});

}  // namespace vlac::certs

#include "vlac/certs/chain.hpp"

#include "vlac/error.hpp"

namespace vlac::certs {

using proto::RejectReason;
using proto::Tag;

namespace {

struct Shape {
  std::size_t rows, cols;
};

Shape operand_shape(const ChainProgram& p, const std::vector<Shape>& products, const ChainOperand& op,
                    std::size_t step) {
  if (op.kind == ChainOperand::Kind::Input) {
    if (op.index >= p.inputs.size()) {
      throw Error(ErrorCode::BrokenReference, "step " + std::to_string(step) + " names a missing input");
    }
    return {la::rows_of(p.inputs[op.index]), la::cols_of(p.inputs[op.index])};
  }
  if (op.index >= step) {
    throw Error(ErrorCode::BrokenReference, "step " + std::to_string(step) + " names a later product");
  }
  return products[op.index];
}

std::vector<Shape> product_shapes(const ChainProgram& p) {
  std::vector<Shape> shapes;
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    const Shape l = operand_shape(p, shapes, p.steps[i].lhs, i);
    const Shape r = operand_shape(p, shapes, p.steps[i].rhs, i);
    if (l.cols != r.rows) throw Error(ErrorCode::DimensionMismatch, "step " + std::to_string(i) + ": inner dims");
    shapes.push_back({l.rows, r.cols});
  }
  return shapes;
}

std::string step_label(std::size_t i) { return "chain." + std::to_string(i); }

la::BlackboxPtr operand(const std::vector<la::BlackboxPtr>& inputs, const std::vector<la::BlackboxPtr>& products,
                        const ChainOperand& op) {
  return op.kind == ChainOperand::Kind::Input ? inputs[op.index] : products[op.index];
}

Rational check_all(VerifierChannel& ch, const ChainProgram& p, const std::vector<la::BlackboxPtr>& inputs,
                   const std::vector<la::DenseMatrix>& products, const SampleSet& S, const FreivaldsOptions& opts) {
  std::vector<la::BlackboxPtr> prods;
  for (const auto& P : products) prods.push_back(la::as_blackbox(P));
  Rational eps{0};
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    const auto& s = p.steps[i];
    eps += freivalds_check(ch, *operand(inputs, prods, s.lhs), *operand(inputs, prods, s.rhs), *prods[i], S, opts,
                           step_label(i));
  }
  return eps;
}

}  // namespace

void validate_chain(const ChainProgram& program) {
  product_shapes(program);
  for (const auto& M : program.inputs) {
    if (la::field_of(M) != la::field_of(program.inputs.front())) {
      throw Error(ErrorCode::DimensionMismatch, "chain inputs over different fields");
    }
  }
}

std::vector<la::DenseMatrix> chain_prove(const ChainProgram& program) {
  validate_chain(program);
  std::vector<la::DenseMatrix> dense_inputs;
  for (const auto& M : program.inputs) dense_inputs.push_back(la::to_dense(M));
  std::vector<la::DenseMatrix> products;
  for (const auto& s : program.steps) {
    auto pick = [&](const ChainOperand& op) -> const la::DenseMatrix& {
      return op.kind == ChainOperand::Kind::Input ? dense_inputs[op.index] : products[op.index];
    };
    products.push_back(la::dense_matmul(pick(s.lhs), pick(s.rhs)));
  }
  return products;
}

proto::Digest chain_digest(const ChainProgram& program, const SampleSet& S, const FreivaldsOptions& opts) {
  proto::InstanceHasher h(kChainId);
  h.sample_set(S).u64(static_cast<std::uint64_t>(opts.variant)).u64(opts.rounds);
  h.u64(program.inputs.size());
  for (const auto& M : program.inputs) hash_matrix(h, M);
  h.u64(program.steps.size());
  for (const auto& s : program.steps) {
    for (const auto& op : {s.lhs, s.rhs}) h.u64(static_cast<std::uint64_t>(op.kind)).u64(op.index);
  }
  return h.finish();
}

proto::VerifierFn chain_verifier(ChainProgram program, SampleSet S, FreivaldsOptions opts,
                                 std::shared_ptr<std::optional<std::vector<la::DenseMatrix>>> result) {
  const auto shapes = product_shapes(program);
  std::vector<la::BlackboxPtr> inputs;
  for (const auto& M : program.inputs) inputs.push_back(la::as_blackbox(M));
  return [program = std::move(program), inputs, shapes, S, opts, result](VerifierChannel& ch) {
    proto::expect_protocol(ch, kChainId);
    const auto m = ch.receive(Tag::Commit, "chain.products");
    proto::expect_items(m, shapes.size());
    std::vector<la::DenseMatrix> products;
    for (std::size_t i = 0; i < shapes.size(); ++i) {
      products.push_back(proto::item_matrix(m, i, S.field(), shapes[i].rows, shapes[i].cols));
    }
    Rational eps = check_all(ch, program, inputs, products, S, opts);
    if (result) *result = std::move(products);
    return Verdict::accept(std::move(eps));
  };
}

proto::ProverFn chain_prover_committing(std::vector<la::DenseMatrix> products, SampleSet S, FreivaldsOptions opts) {
  return [products = std::move(products), S, opts](ProverChannel& ch) {
    proto::send_protocol(ch, kChainId);
    std::vector<proto::Item> items;
    for (const auto& P : products) items.emplace_back(proto::to_payload(P));
    ch.send(Tag::Commit, "chain.products", std::move(items));
    for (std::size_t i = 0; i < products.size(); ++i) {
      freivalds_respond(ch, products[i].cols(), S, opts, step_label(i));
    }
  };
}

ProtocolRun chain_protocol(const ChainProgram& program, const SampleSet& S, const FreivaldsOptions& opts,
                           const std::shared_ptr<std::optional<std::vector<la::DenseMatrix>>>& result) {
  validate_chain(program);
  ProtocolRun run;
  run.protocol_id = std::string(kChainId);
  run.instance_digest = chain_digest(program, S, opts);
  run.field_modulus = S.field().modulus();
  run.prover = [program, S, opts](ProverChannel& ch) {
    chain_prover_committing(chain_prove(program), S, opts)(ch);
  };
  run.verifier = chain_verifier(program, S, opts, result);
  return run;
}

Verdict chain_verify(const ChainProgram& program, const std::vector<la::DenseMatrix>& products,
                     proto::ChallengeSource& src, const SampleSet& S, const FreivaldsOptions& opts) {
  const auto shapes = product_shapes(program);
  std::vector<la::BlackboxPtr> inputs;
  for (const auto& M : program.inputs) inputs.push_back(la::as_blackbox(M));
  return run_offline(src, [&](VerifierChannel& ch) {
    proto::check(products.size() == shapes.size(), RejectReason::ProtocolViolation, "wrong number of products");
    for (std::size_t i = 0; i < shapes.size(); ++i) {
      proto::check(products[i].rows() == shapes[i].rows && products[i].cols() == shapes[i].cols,
                   RejectReason::ProtocolViolation, "product has the wrong shape");
    }
    return Verdict::accept(check_all(ch, program, inputs, products, S, opts));
  });
}

}  // namespace vlac::certs

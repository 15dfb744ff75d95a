#include "algstat/machine.hpp"

#include <cstdio>

namespace algstat {

ModelCondition::ModelCondition(std::vector<BitString> domain, std::vector<Rational> masses, BitString aux)
    : domain_(std::move(domain)), masses_(std::move(masses)), aux_(std::move(aux)) {
  if (domain_.size() != masses_.size()) throw std::invalid_argument("model: domain/mass size mismatch");
  if (domain_.empty()) throw std::invalid_argument("model: empty domain");
  Rational total = 0;
  for (std::size_t i = 0; i < domain_.size(); ++i) {
    if (i > 0 && !(domain_[i - 1] < domain_[i])) {
      throw std::invalid_argument("model: domain not in strictly canonical order");
    }
    if (masses_[i] < 0) throw std::invalid_argument("model: negative mass");
    total += masses_[i];
  }
  if (total > 1) throw std::invalid_argument("model: total mass exceeds 1");
  codebook_ = Codebook::build(masses_);

  canonical_ = "model";
  for (std::size_t i = 0; i < domain_.size(); ++i) {
    canonical_ += ' ';
    canonical_ += domain_[i].token();
    canonical_ += ':';
    canonical_ += to_string(masses_[i]);
  }
  canonical_ += " aux:";
  canonical_ += aux_.token();
}

const BitString* Condition::copy_source() const {
  if (const auto* s = as_str()) return s;
  if (const auto* m = as_model(); m != nullptr && !m->aux().empty()) return &m->aux();
  return nullptr;
}

std::string Condition::canonical() const {
  if (is_none()) return "none";
  if (const auto* s = as_str()) return "str:" + s->token();
  return as_model()->canonical();
}

std::string Condition::fingerprint() const {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

BitString opcode_bits(Opcode op, unsigned copy_bits) {
  switch (op) {
    case Opcode::kEmit0: return bits("00");
    case Opcode::kEmit1: return bits("01");
    case Opcode::kHalt: return bits("100");
    case Opcode::kCopyIn:
      switch (copy_bits) {
        case 1: return bits("10100");
        case 2: return bits("10101");
        case 4: return bits("10110");
        case 8: return bits("10111");
        default: throw std::invalid_argument("COPYIN copies 1, 2, 4 or 8 bits");
      }
    case Opcode::kDouble: return bits("1100");
    case Opcode::kFlip: return bits("1101");
    case Opcode::kSfDecode: return bits("1110");
    case Opcode::kReserved: return bits("1111");
  }
  return {};
}

std::optional<DecodedOp> opcode_decode(const BitString& s, std::size_t offset) {
  const std::size_t left = offset <= s.size() ? s.size() - offset : 0;
  auto bit = [&](std::size_t i) { return s[offset + i]; };
  if (left < 2) return std::nullopt;
  if (!bit(0)) return DecodedOp{bit(1) ? Opcode::kEmit1 : Opcode::kEmit0, 0, 2};
  if (left < 3) return std::nullopt;
  if (!bit(1)) {
    if (!bit(2)) return DecodedOp{Opcode::kHalt, 0, 3};
    if (left < 5) return std::nullopt;
    const unsigned cc = (bit(3) ? 2U : 0U) | (bit(4) ? 1U : 0U);
    return DecodedOp{Opcode::kCopyIn, 1U << cc, 5};
  }
  if (left < 4) return std::nullopt;
  static constexpr Opcode kFour[4] = {Opcode::kDouble, Opcode::kFlip, Opcode::kSfDecode, Opcode::kReserved};
  return DecodedOp{kFour[(bit(2) ? 2 : 0) | (bit(3) ? 1 : 0)], 0, 4};
}

std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::kHalted: return "Halted";
    case RunStatus::kOutOfSteps: return "OutOfSteps";
    case RunStatus::kOutOfOutput: return "OutOfOutput";
    case RunStatus::kDiverged: return "Diverged";
    case RunStatus::kInvalidPrefix: return "InvalidPrefix";
  }
  return "?";
}

namespace {

StepStatus charge(MachineState& state, std::uint64_t steps, const Budgets& budgets) {
  state.steps += steps;
  return state.steps > budgets.max_steps ? StepStatus::kOutOfSteps : StepStatus::kOk;
}

RunStatus to_run_status(StepStatus s) {
  switch (s) {
    case StepStatus::kOutOfSteps: return RunStatus::kOutOfSteps;
    case StepStatus::kOutOfOutput: return RunStatus::kOutOfOutput;
    case StepStatus::kDiverged: return RunStatus::kDiverged;
    case StepStatus::kOk: break;
  }
  return RunStatus::kHalted;
}

}  // namespace

StepStatus execute(MachineState& state, const DecodedOp& op, const Condition& cond, const Budgets& budgets) {
  BitString& buf = state.buffer;
  switch (op.op) {
    case Opcode::kEmit0:
    case Opcode::kEmit1:
      if (auto s = charge(state, 1, budgets); s != StepStatus::kOk) return s;
      if (buf.size() + 1 > budgets.max_output) return StepStatus::kOutOfOutput;
      buf.push_back(op.op == Opcode::kEmit1);
      return StepStatus::kOk;
    case Opcode::kHalt:
      return charge(state, 1, budgets);
    case Opcode::kCopyIn: {
      const BitString* src = cond.copy_source();
      if (src == nullptr || state.cond_pos + op.copy_bits > src->size()) return StepStatus::kDiverged;
      if (auto s = charge(state, op.copy_bits, budgets); s != StepStatus::kOk) return s;
      if (buf.size() + op.copy_bits > budgets.max_output) return StepStatus::kOutOfOutput;
      buf.append(src->substr(state.cond_pos, op.copy_bits));
      state.cond_pos += op.copy_bits;
      return StepStatus::kOk;
    }
    case Opcode::kDouble:
    case Opcode::kFlip:
      if (auto s = charge(state, std::max<std::uint64_t>(1, buf.size()), budgets); s != StepStatus::kOk) return s;
      if (2 * buf.size() > budgets.max_output) return StepStatus::kOutOfOutput;
      if (op.op == Opcode::kDouble) {
        buf.append_self();
      } else {
        buf.append_complement();
      }
      return StepStatus::kOk;
    case Opcode::kSfDecode:
      throw std::logic_error("execute: SFDECODE needs execute_sfdecode");
    case Opcode::kReserved:
      return StepStatus::kDiverged;
  }
  return StepStatus::kDiverged;
}

StepStatus execute_sfdecode(MachineState& state, const ModelCondition& model, std::size_t element,
                            std::size_t codeword_length, const Budgets& budgets) {
  if (auto s = charge(state, std::max<std::uint64_t>(1, codeword_length), budgets); s != StepStatus::kOk) return s;
  const BitString& value = model.domain()[element];
  if (state.buffer.size() + value.size() > budgets.max_output) return StepStatus::kOutOfOutput;
  state.buffer.append(value);
  return StepStatus::kOk;
}

RunOutcome run(const BitString& program, const Condition& cond, const Budgets& budgets) {
  budgets.validate();
  MachineState state;
  std::size_t pos = 0;
  auto finish = [&](RunStatus status) {
    RunOutcome out;
    out.status = status;
    out.steps = state.steps;
    out.consumed = pos;
    if (status == RunStatus::kHalted) out.output = state.buffer;
    return out;
  };

  while (true) {
    const auto op = opcode_decode(program, pos);
    if (!op) return finish(RunStatus::kInvalidPrefix);
    pos += op->length;

    if (op->op == Opcode::kSfDecode) {
      const ModelCondition* model = cond.as_model();
      if (model == nullptr) return finish(RunStatus::kDiverged);
      const auto cw = model->codebook().decode(program, pos);
      if (cw.status == Codebook::DecodeStatus::kMismatch) return finish(RunStatus::kDiverged);
      if (cw.status == Codebook::DecodeStatus::kIncomplete) return finish(RunStatus::kInvalidPrefix);
      pos += cw.consumed;
      if (auto s = execute_sfdecode(state, *model, cw.element, cw.consumed, budgets); s != StepStatus::kOk) {
        return finish(to_run_status(s));
      }
      continue;
    }

    if (auto s = execute(state, *op, cond, budgets); s != StepStatus::kOk) return finish(to_run_status(s));
    if (op->op == Opcode::kHalt) {
      return finish(pos == program.size() ? RunStatus::kHalted : RunStatus::kInvalidPrefix);
    }
  }
}

}  // namespace algstat

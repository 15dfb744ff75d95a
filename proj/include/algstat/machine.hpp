#pragma once

// TPM-1: a total, self-delimiting reference machine.
//
// A program is a stream of prefix-coded opcodes ending at HALT:
//
//   00     EMIT0     append 0                                   1 step
//   01     EMIT1     append 1                                   1 step
//   100    HALT                                                 1 step
//   101cc  COPYIN    copy 2^cc bits from the string condition   1 step/bit
//   1100   DOUBLE    buffer := buffer ‖ buffer                  max(1,|buffer|)
//   1101   FLIP      buffer := buffer ‖ complement(buffer)      max(1,|buffer|)
//   1110   SFDECODE  read a codeword of the model condition's
//                    canonical codebook, append its element     max(1,|codeword|)
//   1111   reserved, always diverges
//
// There are no jumps, so every run terminates; halting programs form a
// prefix-free set because the decode ends exactly at HALT.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "algstat/bitstring.hpp"
#include "algstat/codebook.hpp"
#include "algstat/numeric.hpp"

namespace algstat {

inline constexpr std::string_view kMachineVersion = "tpm1-v1";

struct Budgets {
  std::uint64_t max_steps = 100000;
  std::uint64_t max_output = 4096;

  void validate() const {
    if (max_steps < 1) throw std::invalid_argument("budgets: max_steps must be >= 1");
  }
  friend bool operator==(const Budgets&, const Budgets&) = default;
};

// A finite, exactly weighted domain readable by SFDECODE. An optional
// auxiliary string is readable by COPYIN, which lets a condition carry a
// model together with side information such as its code length.
class ModelCondition {
 public:
  ModelCondition(std::vector<BitString> domain, std::vector<Rational> masses, BitString aux = {});

  const std::vector<BitString>& domain() const { return domain_; }
  const std::vector<Rational>& masses() const { return masses_; }
  const Codebook& codebook() const { return codebook_; }
  const BitString& aux() const { return aux_; }
  // Canonical serialization; two conditions with equal serializations run
  // every program identically.
  const std::string& canonical() const { return canonical_; }

 private:
  std::vector<BitString> domain_;
  std::vector<Rational> masses_;
  BitString aux_;
  Codebook codebook_;
  std::string canonical_;
};

class Condition {
 public:
  Condition() = default;
  static Condition none() { return {}; }
  static Condition str(BitString s) { return Condition(std::move(s)); }
  static Condition model(std::shared_ptr<const ModelCondition> m) { return Condition(std::move(m)); }

  bool is_none() const { return std::holds_alternative<std::monostate>(value_); }
  const BitString* as_str() const { return std::get_if<BitString>(&value_); }
  const ModelCondition* as_model() const {
    auto* p = std::get_if<std::shared_ptr<const ModelCondition>>(&value_);
    return p ? p->get() : nullptr;
  }
  // Bits COPYIN reads: the string itself, a model's aux string, or nothing.
  const BitString* copy_source() const;

  std::string canonical() const;
  // 16 hex digits of FNV-1a over canonical().
  std::string fingerprint() const;

 private:
  explicit Condition(BitString s) : value_(std::move(s)) {}
  explicit Condition(std::shared_ptr<const ModelCondition> m) : value_(std::move(m)) {}

  std::variant<std::monostate, BitString, std::shared_ptr<const ModelCondition>> value_;
};

enum class Opcode : std::uint8_t { kEmit0, kEmit1, kHalt, kCopyIn, kDouble, kFlip, kSfDecode, kReserved };

struct DecodedOp {
  Opcode op;
  unsigned copy_bits = 0;  // COPYIN only
  std::size_t length = 0;  // codeword length in bits
};

// Codeword of an opcode; for COPYIN, copy_bits selects cc.
BitString opcode_bits(Opcode op, unsigned copy_bits = 0);

// Returns the opcode whose codeword prefixes stream[offset..], or nullopt if
// the remaining bits are a proper prefix of every codeword (InvalidPrefix).
std::optional<DecodedOp> opcode_decode(const BitString& stream, std::size_t offset);

enum class RunStatus { kHalted, kOutOfSteps, kOutOfOutput, kDiverged, kInvalidPrefix };
std::string_view to_string(RunStatus status);

struct RunOutcome {
  RunStatus status = RunStatus::kInvalidPrefix;
  BitString output;        // meaningful when Halted
  std::uint64_t steps = 0;
  std::size_t consumed = 0;
  friend bool operator==(const RunOutcome&, const RunOutcome&) = default;
};

// Executes a program. Deterministic and pure; all failure modes are reported
// in the outcome. A string that halts before its last bit is not a program
// and reports kInvalidPrefix.
RunOutcome run(const BitString& program, const Condition& cond, const Budgets& budgets);

// Step-level interface shared by run() and the enumerator.
struct MachineState {
  BitString buffer;
  std::size_t cond_pos = 0;
  std::uint64_t steps = 0;
};

enum class StepStatus { kOk, kOutOfSteps, kOutOfOutput, kDiverged };

// Executes EMIT/COPYIN/DOUBLE/FLIP/HALT/reserved. SFDECODE must go through
// execute_sfdecode since its operand comes from the program stream.
StepStatus execute(MachineState& state, const DecodedOp& op, const Condition& cond,
                   const Budgets& budgets);
StepStatus execute_sfdecode(MachineState& state, const ModelCondition& model, std::size_t element,
                            std::size_t codeword_length, const Budgets& budgets);

}  // namespace algstat

#pragma once

#include <array>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "cohlab/nat.hpp"
#include "cohlab/vm/program.hpp"

namespace cohlab::vm {

/// What the interpreter asks its oracle. Blocked means the value is outside a
/// finite answer window; the run is then abandoned as not-yet-convergent.
class OracleView {
 public:
  enum class Answer : u8 { No = 0, Yes = 1, Blocked = 2 };
  virtual ~OracleView() = default;
  virtual Answer ask(u64 value) const = 0;
};

/// Total oracle built from a fixed membership function (never Blocked).
class FnOracleView final : public OracleView {
 public:
  explicit FnOracleView(bool (*fn)(u64)) : fn_(fn) {}
  Answer ask(u64 v) const override { return fn_(v) ? Answer::Yes : Answer::No; }

 private:
  bool (*fn_)(u64);
};

/// The empty set as an oracle.
const OracleView& empty_oracle_view();

/// A finite binary string as an oracle window: positions below the length
/// answer with the stored bit, positions at or beyond it are Blocked.
class WindowView final : public OracleView {
 public:
  explicit WindowView(std::span<const u8> bits) : bits_(bits) {}
  Answer ask(u64 v) const override {
    if (v >= bits_.size()) return Answer::Blocked;
    return bits_[v] ? Answer::Yes : Answer::No;
  }

 private:
  std::span<const u8> bits_;
};

/// join(A,B): even values go to A, odd values to B.
class JoinView final : public OracleView {
 public:
  JoinView(const OracleView& a, const OracleView& b) : a_(a), b_(b) {}
  Answer ask(u64 v) const override {
    return v % 2 == 0 ? a_.ask(v / 2) : b_.ask(v / 2);
  }

 private:
  const OracleView& a_;
  const OracleView& b_;
};

struct MachineConfig {
  u64 pc{0};
  std::array<u64, kRegisterCount> regs{};
  u64 flag{0};

  bool operator==(const MachineConfig&) const = default;
};

/// Evidence that a run repeats a full configuration: the machine is at the
/// same configuration after step_a and after step_b steps, so it never halts.
struct LoopCertificate {
  u64 step_a{0};
  u64 step_b{0};
  MachineConfig repeated;
};

enum class RunStatus : u8 {
  Halted,
  StillRunning,   // budget exhausted
  Diverges,       // loop certificate attached
  Blocked,        // the oracle window ended below a queried value
  UseCapExceeded  // a query reached the configured value cap
};

struct RunResult {
  RunStatus status{RunStatus::StillRunning};
  u64 value{0};   // HALT value, when Halted
  u64 steps{0};   // executed steps (for Halted: the halting step count)
  u64 use{0};     // 1 + largest queried value, 0 if no query
  std::optional<LoopCertificate> loop;
  std::optional<u64> blocked_value;
  std::vector<u64> query_log;  // populated only when requested

  bool halted() const { return status == RunStatus::Halted; }
};

inline constexpr u64 kNoQueryCap = std::numeric_limits<u64>::max();

struct RunLimits {
  u64 step_budget{0};
  u64 query_value_cap{kNoQueryCap};  // queries at or above it fail the run
  bool log_queries{false};
};

/// Step-bounded interpretation. args.size() must equal p.arity. Every
/// instruction, QUERY included, costs one step. Deterministic; a Halted result
/// is identical under every larger budget.
RunResult run(const Program& p, std::span<const u64> args, const OracleView& oracle,
              u64 step_budget);

RunResult run_ex(const Program& p, std::span<const u64> args, const OracleView& oracle,
                 const RunLimits& limits);

/// Like run, but hunts for a repeated configuration (Brent's cycle finding)
/// and reports Diverges with a minimal certificate when one exists within the
/// budget. Halting at a step <= budget is still reported exactly as run does.
RunResult run_detecting(const Program& p, std::span<const u64> args,
                        const OracleView& oracle, u64 step_budget);

/// Replays the run to both cited steps and confirms the configurations match
/// the certificate and each other.
bool validate_loop_certificate(const Program& p, std::span<const u64> args,
                               const OracleView& oracle, const LoopCertificate& cert);

}  // namespace cohlab::vm
